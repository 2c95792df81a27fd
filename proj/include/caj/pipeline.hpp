#ifndef CAJ_PIPELINE_HPP
#define CAJ_PIPELINE_HPP

#include "caj/encoding.hpp"
#include "caj/neighbors.hpp"
#include "caj/types.hpp"

#include <optional>

namespace caj {

enum class Method { jaccard, ca_jaccard };
enum class PipelineMode { all_pairs, query_gallery };

const char* to_string(Method m);

/// Everything one distance-pipeline invocation needs. In query_gallery mode
/// `features`/`meta` describe the gallery and the query fields must be set;
/// neighbor structures are then built over the concatenated sample set and
/// the query-rows x gallery-columns block is returned.
struct PipelineRequest {
    FeatureMatrix features;
    SampleMeta meta;
    std::optional<FeatureMatrix> query_features;
    std::optional<SampleMeta> query_meta;
    Metric metric = Metric::cosine;
    Method method = Method::ca_jaccard;
    JaccardParams jaccard;
    CaJaccardParams ca;
    Scalar lambda = 0.0;
    PipelineMode mode = PipelineMode::all_pairs;
    int threads = 1;

    void validate() const;
};

/// Weighted expanded neighbors vectors for every sample: robust KRNNs ->
/// vectorize -> LQE.
std::vector<SparseWeightVector> jaccard_vectors(const DistanceMatrix& dist,
                                                const RankingLists& lists,
                                                const JaccardParams& params,
                                                int threads = 1);

/// Weighted expanded neighbors vectors for every sample: CKRNNs ->
/// vectorize -> CLQE. Never runs the recall step.
std::vector<SparseWeightVector> ca_jaccard_vectors(const DistanceMatrix& dist,
                                                   const RankingLists& lists,
                                                   const CaJaccardParams& params,
                                                   int threads = 1);

/// Baseline Jaccard distance pipeline (method must be jaccard).
DistanceMatrix jaccard_pipeline(const PipelineRequest& req);

/// Camera-aware Jaccard distance pipeline (method must be ca_jaccard).
DistanceMatrix ca_jaccard_pipeline(const PipelineRequest& req);

/// Query-vs-gallery re-ranking: runs the requested pipeline in
/// query_gallery mode. Rows are queries, columns gallery samples.
DistanceMatrix rerank(const PipelineRequest& req);

}  // namespace caj

#endif
