#ifndef CAJ_ENCODING_HPP
#define CAJ_ENCODING_HPP

#include "caj/neighbors.hpp"
#include "caj/types.hpp"

namespace caj {

/// Encode a neighbor set of sample i as an L1-normalized sparse vector with
/// weight exp(-D(i, j)) at every neighbor j. Throws on an empty set.
SparseWeightVector vectorize(const NeighborSet& neighbors,
                             const Eigen::Ref<const RowVector>& dist_row);

/// Local query expansion: average the vectors of i's top-k2 global neighbors.
SparseWeightVector lqe(const std::vector<SparseWeightVector>& vectors,
                       const RankingLists& lists, int i, int k2);

/// Camera-aware local query expansion: average the vectors of i's top
/// k2_intra intra-camera and top k2_inter inter-camera neighbors, dividing
/// by the total count after clamping to the available list lengths.
SparseWeightVector clqe(const std::vector<SparseWeightVector>& vectors,
                        const RankingLists& lists, int i, const CaJaccardParams& params);

/// 1 - sum(min) / sum(max) over the union of the two supports.
/// Exactly symmetric in its arguments; 0 for identical vectors.
Scalar overlap_distance(const SparseWeightVector& a, const SparseWeightVector& b);

/// All-pairs overlap distances. When `query` and `gallery` are the same
/// object only the upper triangle is computed and mirrored, which makes the
/// output exactly symmetric with an exactly zero diagonal.
DistanceMatrix overlap_matrix(const std::vector<SparseWeightVector>& query,
                              const std::vector<SparseWeightVector>& gallery,
                              DistanceKind kind, int threads = 1);

/// lambda * original + (1 - lambda) * jaccard_like, elementwise.
DistanceMatrix blend(const DistanceMatrix& original, const DistanceMatrix& jaccard_like,
                     Scalar lambda);

}  // namespace caj

#endif
