#ifndef CAJ_DISTANCE_HPP
#define CAJ_DISTANCE_HPP

#include "caj/types.hpp"

namespace caj {

/// Scale every row to unit Euclidean norm. Throws std::invalid_argument
/// naming the row if a row has zero norm.
FeatureMatrix l2_normalize(const FeatureMatrix& features);

/// Pairwise original distances between the rows of `a` and `b`.
/// cosine: 1 - cos(a_i, b_j), clamped to be nonnegative (range [0, 2]).
/// euclidean: ||a_i - b_j||.
/// Entry (i, j) depends only on the two rows involved, so the output is
/// equivariant under row permutations and identical for any thread count.
DistanceMatrix original_distance(const FeatureMatrix& a, const FeatureMatrix& b,
                                 Metric metric, int threads = 1);

}  // namespace caj

#endif
