#include "caj/neighbors.hpp"

#include "caj/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace caj {

RankingLists::RankingLists(const DistanceMatrix& dist, const SampleMeta& meta, int threads) {
    if (dist.rows() != dist.cols())
        throw std::invalid_argument("ranking lists: distance matrix must be square");
    if (static_cast<Index>(meta.size()) != dist.rows())
        throw std::invalid_argument("ranking lists: meta holds " +
                                    std::to_string(meta.size()) + " samples for a " +
                                    std::to_string(dist.rows()) + "-row matrix");
    n_ = static_cast<int>(dist.rows());
    camera_ = meta.camera;
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    global_order_.resize(nn);
    global_pos_.resize(nn);
    restricted_pos_.resize(nn);
    intra_.resize(n_);
    inter_.resize(n_);

    parallel_for(0, n_, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int i = static_cast<int>(lo); i < hi; ++i) {
            const std::size_t base = static_cast<std::size_t>(i) * n_;
            std::int32_t* order = global_order_.data() + base;
            std::iota(order, order + n_, 0);
            const auto row = dist.data.row(i);
            // Self is pinned to rank 1; everything else sorts by
            // (distance, index) so ties are deterministic.
            std::sort(order, order + n_, [&](std::int32_t x, std::int32_t y) {
                if (x == y) return false;
                if (x == i) return true;
                if (y == i) return false;
                const Scalar dx = row[x];
                const Scalar dy = row[y];
                return dx < dy || (dx == dy && x < y);
            });

            auto& intra = intra_[i];
            auto& inter = inter_[i];
            intra.clear();
            inter.clear();
            for (int r = 0; r < n_; ++r) {
                const std::int32_t j = order[r];
                global_pos_[base + j] = r;
                if (camera_[j] == camera_[i]) {
                    restricted_pos_[base + j] = static_cast<std::int32_t>(intra.size());
                    intra.push_back(j);
                } else {
                    restricted_pos_[base + j] = static_cast<std::int32_t>(inter.size());
                    inter.push_back(j);
                }
            }
        }
    });
}

RankingLists build_ranking_lists(const DistanceMatrix& dist, const SampleMeta& meta,
                                 int threads) {
    return RankingLists(dist, meta, threads);
}

NeighborSet knn(const RankingLists& lists, int i, int k) {
    if (k < 1) throw std::invalid_argument("knn: k must be positive");
    const auto g = lists.global(i);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), g.size());
    NeighborSet out(g.begin(), g.begin() + take);
    std::sort(out.begin(), out.end());
    return out;
}

NeighborSet krnn(const RankingLists& lists, int i, int k1) {
    if (k1 < 1) throw std::invalid_argument("krnn: k1 must be positive");
    const auto g = lists.global(i);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k1), g.size());
    NeighborSet out;
    out.reserve(take);
    for (std::size_t r = 0; r < take; ++r) {
        const std::int32_t j = g[r];
        if (lists.global_rank(j, i) < k1) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::atomic<std::uint64_t>& recall_call_count() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

NeighborSet robust_krnn(const RankingLists& lists, int i, int k1) {
    if (k1 < 2)
        throw std::invalid_argument("robust_krnn: k1 must be >= 2 so the half-k set is nonempty");
    recall_call_count().fetch_add(1, std::memory_order_relaxed);

    const NeighborSet base = krnn(lists, i, k1);
    std::vector<char> in_base(static_cast<std::size_t>(lists.size()), 0);
    for (std::int32_t j : base) in_base[j] = 1;

    NeighborSet result = base;
    const int half = k1 / 2;
    for (std::int32_t j : base) {
        const NeighborSet candidate = krnn(lists, j, half);
        int overlap = 0;
        for (std::int32_t h : candidate) overlap += in_base[h];
        // |base ∩ candidate| >= 2/3 |candidate|, in exact integer arithmetic.
        if (3 * overlap >= 2 * static_cast<int>(candidate.size()))
            result.insert(result.end(), candidate.begin(), candidate.end());
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

std::pair<NeighborSet, NeighborSet> camera_knn(const RankingLists& lists, int i,
                                               int k_intra, int k_inter) {
    if (k_intra < 1 || k_inter < 1)
        throw std::invalid_argument("camera_knn: k values must be positive");
    const auto intra = lists.intra(i);
    const auto inter = lists.inter(i);
    const auto take_intra = std::min<std::size_t>(static_cast<std::size_t>(k_intra), intra.size());
    const auto take_inter = std::min<std::size_t>(static_cast<std::size_t>(k_inter), inter.size());
    NeighborSet a(intra.begin(), intra.begin() + take_intra);
    NeighborSet b(inter.begin(), inter.begin() + take_inter);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return {std::move(a), std::move(b)};
}

NeighborSet ckrnn(const RankingLists& lists, int i, const CaJaccardParams& params) {
    params.validate();
    NeighborSet out;
    const auto intra = lists.intra(i);
    const auto take_intra =
        std::min<std::size_t>(static_cast<std::size_t>(params.k1_intra), intra.size());
    for (std::size_t r = 0; r < take_intra; ++r) {
        const std::int32_t j = intra[r];
        // j shares i's camera, so j's restricted rank of i is its intra rank.
        if (lists.restricted_rank(j, i) < params.k1_intra) out.push_back(j);
    }
    const auto inter = lists.inter(i);
    const auto take_inter =
        std::min<std::size_t>(static_cast<std::size_t>(params.k1_inter), inter.size());
    for (std::size_t r = 0; r < take_inter; ++r) {
        const std::int32_t j = inter[r];
        // j is on another camera, so j's restricted rank of i is its inter rank.
        if (lists.restricted_rank(j, i) < params.k1_inter) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace caj
