#include "caj/encoding.hpp"

#include "caj/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace caj {

SparseWeightVector vectorize(const NeighborSet& neighbors,
                             const Eigen::Ref<const RowVector>& dist_row) {
    if (neighbors.empty())
        throw std::invalid_argument("vectorize: empty neighbor set");
    SparseWeightVector v;
    v.indices = neighbors;
    v.weights.resize(neighbors.size());
    Scalar sum = 0.0;
    for (std::size_t e = 0; e < neighbors.size(); ++e) {
        const Scalar w = std::exp(-dist_row[neighbors[e]]);
        v.weights[e] = w;
        sum += w;
    }
    for (Scalar& w : v.weights) w /= sum;
    return v;
}

namespace {

// Mean of the sparse vectors selected by `ids`, divided by `count`.
SparseWeightVector average_vectors(std::span<const std::int32_t> ids,
                                   const std::vector<SparseWeightVector>& vectors,
                                   std::size_t count) {
    std::vector<std::pair<std::int32_t, Scalar>> gathered;
    std::size_t total = 0;
    for (std::int32_t id : ids) total += vectors[id].size();
    gathered.reserve(total);
    for (std::int32_t id : ids) {
        const SparseWeightVector& v = vectors[id];
        for (std::size_t e = 0; e < v.size(); ++e)
            gathered.emplace_back(v.indices[e], v.weights[e]);
    }
    std::stable_sort(gathered.begin(), gathered.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    SparseWeightVector out;
    const Scalar inv = 1.0 / static_cast<Scalar>(count);
    std::size_t e = 0;
    while (e < gathered.size()) {
        const std::int32_t idx = gathered[e].first;
        Scalar sum = 0.0;
        while (e < gathered.size() && gathered[e].first == idx) {
            sum += gathered[e].second;
            ++e;
        }
        out.indices.push_back(idx);
        out.weights.push_back(sum * inv);
    }
    return out;
}

}  // namespace

SparseWeightVector lqe(const std::vector<SparseWeightVector>& vectors,
                       const RankingLists& lists, int i, int k2) {
    if (k2 < 1) throw std::invalid_argument("lqe: k2 must be positive");
    const auto g = lists.global(i);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k2), g.size());
    return average_vectors(g.subspan(0, take), vectors, take);
}

SparseWeightVector clqe(const std::vector<SparseWeightVector>& vectors,
                        const RankingLists& lists, int i, const CaJaccardParams& params) {
    params.validate();
    const auto intra = lists.intra(i);
    const auto inter = lists.inter(i);
    const auto take_intra =
        std::min<std::size_t>(static_cast<std::size_t>(params.k2_intra), intra.size());
    const auto take_inter =
        std::min<std::size_t>(static_cast<std::size_t>(params.k2_inter), inter.size());
    std::vector<std::int32_t> ids;
    ids.reserve(take_intra + take_inter);
    ids.insert(ids.end(), intra.begin(), intra.begin() + take_intra);
    ids.insert(ids.end(), inter.begin(), inter.begin() + take_inter);
    return average_vectors(ids, vectors, ids.size());
}

Scalar overlap_distance(const SparseWeightVector& a, const SparseWeightVector& b) {
    Scalar min_sum = 0.0;
    Scalar max_sum = 0.0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < a.size() && ib < b.size()) {
        const std::int32_t xa = a.indices[ia];
        const std::int32_t xb = b.indices[ib];
        if (xa == xb) {
            min_sum += std::min(a.weights[ia], b.weights[ib]);
            max_sum += std::max(a.weights[ia], b.weights[ib]);
            ++ia;
            ++ib;
        } else if (xa < xb) {
            max_sum += a.weights[ia++];
        } else {
            max_sum += b.weights[ib++];
        }
    }
    for (; ia < a.size(); ++ia) max_sum += a.weights[ia];
    for (; ib < b.size(); ++ib) max_sum += b.weights[ib];
    if (max_sum == 0.0) return 0.0;
    return 1.0 - min_sum / max_sum;
}

DistanceMatrix overlap_matrix(const std::vector<SparseWeightVector>& query,
                              const std::vector<SparseWeightVector>& gallery,
                              DistanceKind kind, int threads) {
    DistanceMatrix out;
    out.kind = kind;
    out.data.resize(static_cast<Index>(query.size()), static_cast<Index>(gallery.size()));
    if (&query == &gallery) {
        const auto n = static_cast<std::int64_t>(query.size());
        parallel_for(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i)
                for (std::int64_t j = i; j < n; ++j)
                    out.data(i, j) = overlap_distance(query[i], query[j]);
        });
        parallel_for(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i)
                for (std::int64_t j = 0; j < i; ++j) out.data(i, j) = out.data(j, i);
        });
    } else {
        parallel_for(0, static_cast<std::int64_t>(query.size()), threads,
                     [&](std::int64_t lo, std::int64_t hi) {
                         for (std::int64_t i = lo; i < hi; ++i)
                             for (std::size_t j = 0; j < gallery.size(); ++j)
                                 out.data(i, j) = overlap_distance(query[i], gallery[j]);
                     });
    }
    return out;
}

DistanceMatrix blend(const DistanceMatrix& original, const DistanceMatrix& jaccard_like,
                     Scalar lambda) {
    if (original.rows() != jaccard_like.rows() || original.cols() != jaccard_like.cols())
        throw std::invalid_argument("blend: shape mismatch");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("blend: lambda must lie in [0, 1]");
    DistanceMatrix out;
    out.kind = DistanceKind::blended;
    out.data = lambda * original.data + (1.0 - lambda) * jaccard_like.data;
    return out;
}

}  // namespace caj
