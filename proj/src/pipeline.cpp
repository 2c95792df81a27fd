#include "caj/pipeline.hpp"

#include "caj/distance.hpp"
#include "caj/parallel.hpp"

namespace caj {

const char* to_string(Method m) {
    return m == Method::jaccard ? "jaccard" : "ca_jaccard";
}

void PipelineRequest::validate() const {
    validate_inputs(features, meta);
    if (method == Method::jaccard)
        jaccard.validate();
    else
        ca.validate();
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("pipeline: lambda must lie in [0, 1]");
    if (mode == PipelineMode::query_gallery) {
        if (!query_features || !query_meta)
            throw std::invalid_argument(
                "pipeline: query features and labels are required in query_gallery mode");
        validate_inputs(*query_features, *query_meta);
        if (query_features->cols() != features.cols())
            throw std::invalid_argument("pipeline: query/gallery dimension mismatch");
    }
}

std::vector<SparseWeightVector> jaccard_vectors(const DistanceMatrix& dist,
                                                const RankingLists& lists,
                                                const JaccardParams& params, int threads) {
    params.validate();
    const int n = lists.size();
    std::vector<SparseWeightVector> base(n);
    parallel_for(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int i = static_cast<int>(lo); i < hi; ++i)
            base[i] = vectorize(robust_krnn(lists, i, params.k1), dist.data.row(i));
    });
    std::vector<SparseWeightVector> expanded(n);
    parallel_for(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int i = static_cast<int>(lo); i < hi; ++i)
            expanded[i] = lqe(base, lists, i, params.k2);
    });
    return expanded;
}

std::vector<SparseWeightVector> ca_jaccard_vectors(const DistanceMatrix& dist,
                                                   const RankingLists& lists,
                                                   const CaJaccardParams& params,
                                                   int threads) {
    params.validate();
    const int n = lists.size();
    std::vector<SparseWeightVector> base(n);
    parallel_for(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int i = static_cast<int>(lo); i < hi; ++i)
            base[i] = vectorize(ckrnn(lists, i, params), dist.data.row(i));
    });
    std::vector<SparseWeightVector> expanded(n);
    parallel_for(0, n, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int i = static_cast<int>(lo); i < hi; ++i)
            expanded[i] = clqe(base, lists, i, params);
    });
    return expanded;
}

namespace {

DistanceMatrix run_pipeline(const PipelineRequest& req) {
    req.validate();
    const bool qg = req.mode == PipelineMode::query_gallery;

    FeatureMatrix joined;
    SampleMeta joined_meta;
    const FeatureMatrix* samples = &req.features;
    const SampleMeta* meta = &req.meta;
    Index num_query = 0;
    if (qg) {
        // Queries first, then gallery: reciprocal structure is built over
        // the union of both sample sets.
        num_query = req.query_features->rows();
        joined.resize(num_query + req.features.rows(), req.features.cols());
        joined.topRows(num_query) = *req.query_features;
        joined.bottomRows(req.features.rows()) = req.features;
        joined_meta.camera = req.query_meta->camera;
        joined_meta.camera.insert(joined_meta.camera.end(), req.meta.camera.begin(),
                                  req.meta.camera.end());
        if (req.query_meta->has_identity() && req.meta.has_identity()) {
            joined_meta.identity = req.query_meta->identity;
            joined_meta.identity.insert(joined_meta.identity.end(),
                                        req.meta.identity.begin(), req.meta.identity.end());
        }
        samples = &joined;
        meta = &joined_meta;
    }

    const DistanceMatrix orig = original_distance(*samples, *samples, req.metric, req.threads);
    const RankingLists lists(orig, *meta, req.threads);
    const DistanceKind kind =
        req.method == Method::jaccard ? DistanceKind::jaccard : DistanceKind::ca_jaccard;
    const std::vector<SparseWeightVector> expanded =
        req.method == Method::jaccard
            ? jaccard_vectors(orig, lists, req.jaccard, req.threads)
            : ca_jaccard_vectors(orig, lists, req.ca, req.threads);
    DistanceMatrix result = overlap_matrix(expanded, expanded, kind, req.threads);

    if (qg) {
        const Index num_gallery = req.features.rows();
        DistanceMatrix block;
        block.kind = kind;
        block.data = result.data.block(0, num_query, num_query, num_gallery);
        if (req.lambda > 0.0) {
            DistanceMatrix orig_block;
            orig_block.kind = DistanceKind::original;
            orig_block.data = orig.data.block(0, num_query, num_query, num_gallery);
            return blend(orig_block, block, req.lambda);
        }
        return block;
    }
    if (req.lambda > 0.0) return blend(orig, result, req.lambda);
    return result;
}

}  // namespace

DistanceMatrix jaccard_pipeline(const PipelineRequest& req) {
    if (req.method != Method::jaccard)
        throw std::invalid_argument("jaccard_pipeline: request method is not jaccard");
    return run_pipeline(req);
}

DistanceMatrix ca_jaccard_pipeline(const PipelineRequest& req) {
    if (req.method != Method::ca_jaccard)
        throw std::invalid_argument("ca_jaccard_pipeline: request method is not ca_jaccard");
    return run_pipeline(req);
}

DistanceMatrix rerank(const PipelineRequest& req) {
    if (req.mode != PipelineMode::query_gallery)
        throw std::invalid_argument("rerank: request mode must be query_gallery");
    return run_pipeline(req);
}

}  // namespace caj
