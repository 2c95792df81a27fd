#include "caj/distance.hpp"

#include "caj/parallel.hpp"

#include <cmath>

namespace caj {

FeatureMatrix l2_normalize(const FeatureMatrix& features) {
    FeatureMatrix out(features.rows(), features.cols());
    for (Index i = 0; i < features.rows(); ++i) {
        const Scalar norm = features.row(i).norm();
        if (norm == 0.0)
            throw std::invalid_argument("l2_normalize: zero-norm row " + std::to_string(i));
        out.row(i) = features.row(i) / norm;
    }
    return out;
}

DistanceMatrix original_distance(const FeatureMatrix& a, const FeatureMatrix& b,
                                 Metric metric, int threads) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("original_distance: dimension mismatch (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.cols()) + ")");
    DistanceMatrix dist;
    dist.kind = DistanceKind::original;
    dist.data.resize(a.rows(), b.rows());

    if (metric == Metric::cosine) {
        const FeatureMatrix na = l2_normalize(a);
        const FeatureMatrix nb = l2_normalize(b);
        parallel_for(0, a.rows(), threads, [&](std::int64_t lo, std::int64_t hi) {
            for (Index i = lo; i < hi; ++i) {
                for (Index j = 0; j < nb.rows(); ++j) {
                    dist.data(i, j) = std::max(0.0, 1.0 - na.row(i).dot(nb.row(j)));
                }
            }
        });
    } else {
        parallel_for(0, a.rows(), threads, [&](std::int64_t lo, std::int64_t hi) {
            for (Index i = lo; i < hi; ++i) {
                for (Index j = 0; j < b.rows(); ++j) {
                    dist.data(i, j) = (a.row(i) - b.row(j)).norm();
                }
            }
        });
    }
    return dist;
}

}  // namespace caj
