#include "caj/types.hpp"

#include <cmath>

namespace caj {

const char* to_string(Metric m) {
    return m == Metric::cosine ? "cosine" : "euclidean";
}

const char* to_string(DistanceKind k) {
    switch (k) {
        case DistanceKind::original: return "original";
        case DistanceKind::jaccard: return "jaccard";
        case DistanceKind::ca_jaccard: return "ca_jaccard";
        case DistanceKind::blended: return "blended";
    }
    return "unknown";
}

Scalar SparseWeightVector::l1_mass() const {
    Scalar sum = 0.0;
    for (Scalar w : weights) sum += w;
    return sum;
}

Scalar SparseWeightVector::at(std::int32_t j) const {
    auto it = std::lower_bound(indices.begin(), indices.end(), j);
    if (it == indices.end() || *it != j) return 0.0;
    return weights[static_cast<std::size_t>(it - indices.begin())];
}

Vector SparseWeightVector::to_dense(Index n) const {
    Vector out = Vector::Zero(n);
    for (std::size_t e = 0; e < indices.size(); ++e) out[indices[e]] = weights[e];
    return out;
}

void JaccardParams::validate() const {
    if (k1 < 1 || k2 < 1)
        throw std::invalid_argument("jaccard params: k1 and k2 must be positive");
    if (k2 >= k1)
        throw std::invalid_argument("jaccard params: k2 must be smaller than k1");
}

void CaJaccardParams::validate() const {
    if (k1_intra < 1 || k1_inter < 1 || k2_intra < 1 || k2_inter < 1)
        throw std::invalid_argument("ca-jaccard params: all k values must be positive");
    if (k2_intra > k1_intra)
        throw std::invalid_argument("ca-jaccard params: k2_intra must not exceed k1_intra");
    if (k2_inter > k1_inter)
        throw std::invalid_argument("ca-jaccard params: k2_inter must not exceed k1_inter");
}

void validate_inputs(const FeatureMatrix& features, const SampleMeta& meta) {
    if (features.rows() < 1 || features.cols() < 1)
        throw std::invalid_argument("features: need at least one row and one column");
    for (Index i = 0; i < features.rows(); ++i) {
        if (!features.row(i).allFinite())
            throw std::invalid_argument("features: non-finite entry in row " +
                                        std::to_string(i));
    }
    if (meta.camera.empty())
        throw std::invalid_argument("meta: camera set is empty");
    if (static_cast<Index>(meta.camera.size()) != features.rows())
        throw std::invalid_argument(
            "meta: " + std::to_string(meta.camera.size()) + " camera labels for " +
            std::to_string(features.rows()) + " samples");
    for (std::size_t i = 0; i < meta.camera.size(); ++i) {
        if (meta.camera[i] < 0)
            throw std::invalid_argument("meta: negative camera id at row " +
                                        std::to_string(i));
    }
    if (meta.has_identity() && meta.identity.size() != meta.camera.size())
        throw std::invalid_argument(
            "meta: " + std::to_string(meta.identity.size()) + " identity labels for " +
            std::to_string(meta.camera.size()) + " samples");
}

void validate_matrix(const DistanceMatrix& dist, Scalar tol) {
    const Matrix& d = dist.data;
    const bool jaccard_like =
        dist.kind == DistanceKind::jaccard || dist.kind == DistanceKind::ca_jaccard;
    for (Index i = 0; i < d.rows(); ++i) {
        for (Index j = 0; j < d.cols(); ++j) {
            const Scalar v = d(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("distance matrix: invalid entry at (" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            ")");
            if (jaccard_like && v > 1.0 + tol)
                throw std::invalid_argument("distance matrix: entry > 1 at (" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            ")");
        }
    }
    if (jaccard_like && d.rows() == d.cols()) {
        for (Index i = 0; i < d.rows(); ++i) {
            if (std::abs(d(i, i)) > tol)
                throw std::invalid_argument("distance matrix: nonzero diagonal at " +
                                            std::to_string(i));
            for (Index j = i + 1; j < d.cols(); ++j) {
                if (std::abs(d(i, j) - d(j, i)) > tol)
                    throw std::invalid_argument("distance matrix: asymmetry at (" +
                                                std::to_string(i) + "," +
                                                std::to_string(j) + ")");
            }
        }
    }
}

}  // namespace caj
