#ifndef CAJ_NEIGHBORS_HPP
#define CAJ_NEIGHBORS_HPP

#include "caj/types.hpp"

#include <atomic>
#include <span>

namespace caj {

/// Per-sample ranking lists over a square original distance matrix.
///
/// For every sample i the global list is a permutation of [0, N) sorted by
/// ascending distance to i, ties broken by ascending index, with i itself
/// pinned at rank 1 (self-distance 0). The intra list restricts the global
/// list to samples sharing i's camera (i included); the inter list holds the
/// rest. Rank positions are cached for O(1) reciprocity tests.
class RankingLists {
public:
    RankingLists(const DistanceMatrix& dist, const SampleMeta& meta, int threads = 1);

    int size() const { return n_; }
    int camera(int i) const { return camera_[i]; }

    std::span<const std::int32_t> global(int i) const {
        return {global_order_.data() + static_cast<std::size_t>(i) * n_,
                static_cast<std::size_t>(n_)};
    }
    std::span<const std::int32_t> intra(int i) const {
        return {intra_[i].data(), intra_[i].size()};
    }
    std::span<const std::int32_t> inter(int i) const {
        return {inter_[i].data(), inter_[i].size()};
    }

    /// Rank of j in i's global list (0-based; 0 is i itself).
    std::int32_t global_rank(int i, int j) const {
        return global_pos_[static_cast<std::size_t>(i) * n_ + j];
    }
    /// Rank of j in i's intra list when cameras match, else in i's inter list.
    std::int32_t restricted_rank(int i, int j) const {
        return restricted_pos_[static_cast<std::size_t>(i) * n_ + j];
    }

private:
    int n_ = 0;
    std::vector<int> camera_;
    std::vector<std::int32_t> global_order_;
    std::vector<std::int32_t> global_pos_;
    std::vector<std::vector<std::int32_t>> intra_;
    std::vector<std::vector<std::int32_t>> inter_;
    std::vector<std::int32_t> restricted_pos_;
};

/// Convenience wrapper matching the construction operation.
RankingLists build_ranking_lists(const DistanceMatrix& dist, const SampleMeta& meta,
                                 int threads = 1);

/// Top-min(k, N) entries of i's global list.
NeighborSet knn(const RankingLists& lists, int i, int k);

/// k-reciprocal nearest neighbors: {j : j in knn(i, k1) and i in knn(j, k1)}.
/// Always contains i.
NeighborSet krnn(const RankingLists& lists, int i, int k1);

/// Robust KRNNs: krnn(i, k1) unioned with krnn(j, floor(k1/2)) for every
/// j in krnn(i, k1) whose half-k set overlaps krnn(i, k1) in at least
/// two thirds of its members. Requires k1 >= 2.
NeighborSet robust_krnn(const RankingLists& lists, int i, int k1);

/// Top-min(k_intra, |intra|) of the intra list and top-min(k_inter, |inter|)
/// of the inter list.
std::pair<NeighborSet, NeighborSet> camera_knn(const RankingLists& lists, int i,
                                               int k_intra, int k_inter);

/// Camera-aware KRNNs: the union of the intra-camera reciprocal set (tested
/// within intra lists at k1_intra) and the inter-camera reciprocal set
/// (tested within inter lists at k1_inter). No recall step.
NeighborSet ckrnn(const RankingLists& lists, int i, const CaJaccardParams& params);

/// Number of robust-recall executions since process start. Lets callers
/// verify which pipelines exercise the recall step.
std::atomic<std::uint64_t>& recall_call_count();

}  // namespace caj

#endif
