#ifndef CAJ_TYPES_HPP
#define CAJ_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace caj {

using Scalar = double;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
using Index = Eigen::Index;

/// One row per sample, one column per feature dimension.
using FeatureMatrix = Matrix;

enum class Metric { cosine, euclidean };
enum class DistanceKind { original, jaccard, ca_jaccard, blended };

const char* to_string(Metric m);
const char* to_string(DistanceKind k);

/// Per-sample camera label plus optional ground-truth identity.
/// Identity -1 marks a junk/distractor sample.
struct SampleMeta {
    std::vector<int> camera;
    std::vector<int> identity;  // empty when identities are unknown

    std::size_t size() const { return camera.size(); }
    bool has_identity() const { return !identity.empty(); }

    /// Meta for `n` samples that all share camera 0 and carry no identities.
    static SampleMeta single_camera(std::size_t n) {
        SampleMeta m;
        m.camera.assign(n, 0);
        return m;
    }
};

/// Dense pairwise distances tagged with how they were produced.
struct DistanceMatrix {
    Matrix data;
    DistanceKind kind = DistanceKind::original;

    Index rows() const { return data.rows(); }
    Index cols() const { return data.cols(); }
};

/// L1-normalized weighted neighbors vector stored sparsely.
/// Indices are unique and ascending; weights are strictly positive.
struct SparseWeightVector {
    std::vector<std::int32_t> indices;
    std::vector<Scalar> weights;

    std::size_t size() const { return indices.size(); }
    Scalar l1_mass() const;
    /// Weight at sample index `j`, zero when outside the support.
    Scalar at(std::int32_t j) const;
    /// Expand into a dense n-dimensional vector.
    Vector to_dense(Index n) const;
};

/// Ordered set of sample indices (ascending).
using NeighborSet = std::vector<std::int32_t>;

/// Baseline Jaccard parameters (k-reciprocal rank and expansion size).
struct JaccardParams {
    int k1 = 20;
    int k2 = 6;
    void validate() const;
};

/// Camera-aware parameters: reciprocal ranks and expansion sizes for the
/// intra-camera and inter-camera ranking lists.
struct CaJaccardParams {
    int k1_intra = 5;
    int k1_inter = 20;
    int k2_intra = 2;
    int k2_inter = 4;
    void validate() const;
};

/// Checks feature/meta invariants: N >= 1, D >= 1, all entries finite,
/// meta length matches, camera ids nonnegative. Throws std::invalid_argument
/// naming the offending row.
void validate_inputs(const FeatureMatrix& features, const SampleMeta& meta);

/// Checks DistanceMatrix invariants for its kind: entries finite and >= 0,
/// <= 1 for jaccard-like kinds, and symmetry/zero diagonal for square
/// jaccard-like matrices (tolerance 1e-6).
void validate_matrix(const DistanceMatrix& dist, Scalar tol = 1e-6);

}  // namespace caj

#endif
