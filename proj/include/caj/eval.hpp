#ifndef CAJ_EVAL_HPP
#define CAJ_EVAL_HPP

#include "caj/clustering.hpp"
#include "caj/types.hpp"

#include <optional>

namespace caj {

/// Average precision of one ranked relevance list: the mean over relevant
/// positions r of (number of relevant in the top r) / r. Returns nullopt
/// when nothing is relevant, so callers can exclude the query explicitly.
std::optional<Scalar> average_precision(const std::vector<bool>& ranked_relevance);

struct EvalResult {
    Scalar mean_ap = 0.0;
    std::vector<std::pair<int, Scalar>> cmc;  // (rank, fraction with a hit in top-rank)
    int valid_queries = 0;
    int skipped_queries = 0;  // queries with no positives after filtering
};

/// Standard re-ID retrieval protocol over a query x gallery distance matrix.
/// Per query, gallery samples sharing both its identity and camera are
/// excluded, as are junk samples (identity -1). Ties are broken by gallery
/// index. Throws when identities are missing or no query remains valid.
EvalResult evaluate(const DistanceMatrix& dist, const SampleMeta& query_meta,
                    const SampleMeta& gallery_meta, const std::vector<int>& cmc_ranks);

/// Reliability statistics over weighted expanded neighbors vectors,
/// self excluded from every support.
struct NeighborStats {
    Scalar mean_inter_proportion = 0.0;      // fraction of support that is inter-camera
    Scalar mean_inter_weight = 0.0;          // inter-camera share of non-self weight mass
    Scalar neighbor_accuracy_support = 0.0;  // fraction of support sharing the identity
    Scalar neighbor_accuracy_weighted = 0.0; // same-identity share of non-self weight mass
};

NeighborStats neighbor_stats(const std::vector<SparseWeightVector>& expanded,
                             const SampleMeta& meta);

struct ClusterAgreement {
    Scalar pairwise_f = 0.0;
    Scalar ari = 0.0;
};

/// Pairwise F-score and adjusted Rand index between a clustering and the
/// ground-truth identity partition. Noise points and junk identities are
/// treated as singletons.
ClusterAgreement cluster_agreement(const ClusterAssignment& pred,
                                   const SampleMeta& truth);

}  // namespace caj

#endif
