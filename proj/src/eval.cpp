#include "caj/eval.hpp"

#include <algorithm>
#include <map>

namespace caj {

std::optional<Scalar> average_precision(const std::vector<bool>& ranked_relevance) {
    int relevant = 0;
    Scalar sum = 0.0;
    for (std::size_t r = 0; r < ranked_relevance.size(); ++r) {
        if (ranked_relevance[r]) {
            ++relevant;
            sum += static_cast<Scalar>(relevant) / static_cast<Scalar>(r + 1);
        }
    }
    if (relevant == 0) return std::nullopt;
    return sum / relevant;
}

EvalResult evaluate(const DistanceMatrix& dist, const SampleMeta& query_meta,
                    const SampleMeta& gallery_meta, const std::vector<int>& cmc_ranks) {
    if (!query_meta.has_identity() || !gallery_meta.has_identity())
        throw std::invalid_argument("evaluate: identity labels are required");
    if (static_cast<Index>(query_meta.size()) != dist.rows() ||
        static_cast<Index>(gallery_meta.size()) != dist.cols())
        throw std::invalid_argument("evaluate: meta sizes do not match the matrix");
    for (int k : cmc_ranks)
        if (k < 1) throw std::invalid_argument("evaluate: cmc ranks must be positive");

    const int num_gallery = static_cast<int>(dist.cols());
    EvalResult result;
    Scalar ap_sum = 0.0;
    std::vector<int> cmc_hits(cmc_ranks.size(), 0);

    std::vector<int> order;
    for (Index q = 0; q < dist.rows(); ++q) {
        const int qid = query_meta.identity[q];
        const int qcam = query_meta.camera[q];
        if (qid == -1) {
            ++result.skipped_queries;
            continue;
        }
        // Standard protocol: drop junk and same-identity/same-camera entries.
        order.clear();
        for (int g = 0; g < num_gallery; ++g) {
            const int gid = gallery_meta.identity[g];
            if (gid == -1) continue;
            if (gid == qid && gallery_meta.camera[g] == qcam) continue;
            order.push_back(g);
        }
        const auto row = dist.data.row(q);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return row[a] < row[b] || (row[a] == row[b] && a < b);
        });

        int first_hit = -1;
        std::vector<bool> flags(order.size());
        for (std::size_t r = 0; r < order.size(); ++r) {
            flags[r] = gallery_meta.identity[order[r]] == qid;
            if (flags[r] && first_hit < 0) first_hit = static_cast<int>(r);
        }
        const auto ap = average_precision(flags);
        if (!ap) {
            ++result.skipped_queries;
            continue;
        }
        ++result.valid_queries;
        ap_sum += *ap;
        for (std::size_t c = 0; c < cmc_ranks.size(); ++c)
            cmc_hits[c] += first_hit < cmc_ranks[c];
    }

    if (result.valid_queries == 0)
        throw std::runtime_error("evaluate: no query has a valid match after filtering");
    result.mean_ap = ap_sum / result.valid_queries;
    for (std::size_t c = 0; c < cmc_ranks.size(); ++c)
        result.cmc.emplace_back(cmc_ranks[c],
                                static_cast<Scalar>(cmc_hits[c]) / result.valid_queries);
    return result;
}

NeighborStats neighbor_stats(const std::vector<SparseWeightVector>& expanded,
                             const SampleMeta& meta) {
    if (!meta.has_identity())
        throw std::invalid_argument("neighbor_stats: identity labels are required");
    if (expanded.size() != meta.size())
        throw std::invalid_argument("neighbor_stats: vector count does not match meta");

    NeighborStats stats;
    const std::size_t n = expanded.size();
    for (std::size_t i = 0; i < n; ++i) {
        const SparseWeightVector& v = expanded[i];
        int support = 0;
        int inter = 0;
        int same_id = 0;
        Scalar mass = 0.0;
        Scalar inter_mass = 0.0;
        Scalar same_id_mass = 0.0;
        for (std::size_t e = 0; e < v.size(); ++e) {
            const std::int32_t j = v.indices[e];
            if (j == static_cast<std::int32_t>(i)) continue;  // self excluded
            const Scalar w = v.weights[e];
            ++support;
            mass += w;
            if (meta.camera[j] != meta.camera[i]) {
                ++inter;
                inter_mass += w;
            }
            if (meta.identity[j] == meta.identity[i]) {
                ++same_id;
                same_id_mass += w;
            }
        }
        if (support > 0) {
            stats.mean_inter_proportion += static_cast<Scalar>(inter) / support;
            stats.neighbor_accuracy_support += static_cast<Scalar>(same_id) / support;
        }
        if (mass > 0.0) {
            stats.mean_inter_weight += inter_mass / mass;
            stats.neighbor_accuracy_weighted += same_id_mass / mass;
        }
    }
    stats.mean_inter_proportion /= n;
    stats.mean_inter_weight /= n;
    stats.neighbor_accuracy_support /= n;
    stats.neighbor_accuracy_weighted /= n;
    return stats;
}

namespace {

Scalar pairs2(Scalar c) { return c * (c - 1.0) / 2.0; }

}  // namespace

ClusterAgreement cluster_agreement(const ClusterAssignment& pred, const SampleMeta& truth) {
    if (!truth.has_identity())
        throw std::invalid_argument("cluster_agreement: identity labels are required");
    if (pred.labels.size() != truth.identity.size())
        throw std::invalid_argument("cluster_agreement: length mismatch");

    const int n = static_cast<int>(pred.labels.size());
    if (n < 2) return {1.0, 1.0};

    // Noise points and junk identities become singletons.
    std::vector<int> p(n), t(n);
    int next_p = pred.num_clusters;
    int max_id = -1;
    for (int i = 0; i < n; ++i)
        max_id = std::max(max_id, truth.identity[i]);
    int next_t = max_id + 1;
    for (int i = 0; i < n; ++i) {
        p[i] = pred.labels[i] == ClusterAssignment::kNoise ? next_p++ : pred.labels[i];
        t[i] = truth.identity[i] == -1 ? next_t++ : truth.identity[i];
    }

    std::map<std::pair<int, int>, int> contingency;
    std::map<int, int> pred_sizes, truth_sizes;
    for (int i = 0; i < n; ++i) {
        ++contingency[{p[i], t[i]}];
        ++pred_sizes[p[i]];
        ++truth_sizes[t[i]];
    }

    Scalar tp = 0.0;
    for (const auto& [key, count] : contingency) tp += pairs2(count);
    Scalar pred_pairs = 0.0;
    for (const auto& [key, count] : pred_sizes) pred_pairs += pairs2(count);
    Scalar truth_pairs = 0.0;
    for (const auto& [key, count] : truth_sizes) truth_pairs += pairs2(count);

    ClusterAgreement out;
    out.pairwise_f =
        pred_pairs + truth_pairs == 0.0 ? 1.0 : 2.0 * tp / (pred_pairs + truth_pairs);

    const Scalar all_pairs = pairs2(static_cast<Scalar>(n));
    const Scalar expected = pred_pairs * truth_pairs / all_pairs;
    const Scalar max_index = 0.5 * (pred_pairs + truth_pairs);
    out.ari = max_index == expected ? 1.0 : (tp - expected) / (max_index - expected);
    return out;
}

}  // namespace caj
