#include "caj/cli.hpp"

#include "caj/clustering.hpp"
#include "caj/distance.hpp"
#include "caj/eval.hpp"
#include "caj/io.hpp"
#include "caj/parallel.hpp"
#include "caj/pipeline.hpp"
#include "caj/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace caj::cli {

namespace {

Metric to_metric(const std::string& s) {
    return s == "euclidean" ? Metric::euclidean : Metric::cosine;
}

io::MatrixFileFormat to_format(const std::string& s) {
    return s == "csv" ? io::MatrixFileFormat::csv : io::MatrixFileFormat::binary;
}

SampleMeta load_meta(const std::string& path, Index n) {
    if (path.empty()) return SampleMeta::single_camera(static_cast<std::size_t>(n));
    return io::read_labels(path);
}

void report_matrix(const char* cmd, const DistanceMatrix& dist, const std::string& path) {
    std::printf("%s: wrote %s (%lldx%lld, kind=%s)\n", cmd, path.c_str(),
                static_cast<long long>(dist.rows()), static_cast<long long>(dist.cols()),
                to_string(dist.kind));
}

struct PipelineOpts {
    std::string features;
    std::string labels;
    std::string metric = "cosine";
    std::string out;
    std::string format = "binary";
    double lambda = 0.0;
    int threads = 0;
    JaccardParams jp;
    CaJaccardParams cp;
};

void add_common(CLI::App* cmd, PipelineOpts& o, bool labels_required) {
    cmd->add_option("--features", o.features, "feature file (.cajf)")->required();
    auto* labels = cmd->add_option("--labels", o.labels, "label CSV (index,camera[,identity])");
    if (labels_required) labels->required();
    cmd->add_option("--metric", o.metric, "original distance metric")
        ->check(CLI::IsMember({"cosine", "euclidean"}));
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

void add_out(CLI::App* cmd, PipelineOpts& o) {
    cmd->add_option("--out", o.out, "output matrix path")->required();
    cmd->add_option("--format", o.format, "matrix file format")
        ->check(CLI::IsMember({"binary", "csv"}));
}

void add_jaccard_params(CLI::App* cmd, JaccardParams& p) {
    cmd->add_option("--k1", p.k1, "reciprocal-neighbor rank");
    cmd->add_option("--k2", p.k2, "query-expansion size");
}

void add_ca_params(CLI::App* cmd, CaJaccardParams& p) {
    cmd->add_option("--k1-intra", p.k1_intra, "intra-camera reciprocal rank");
    cmd->add_option("--k1-inter", p.k1_inter, "inter-camera reciprocal rank");
    cmd->add_option("--k2-intra", p.k2_intra, "intra-camera expansion size");
    cmd->add_option("--k2-inter", p.k2_inter, "inter-camera expansion size");
}

PipelineRequest make_request(const PipelineOpts& o, Method method, double lambda) {
    PipelineRequest req;
    req.features = io::read_features(o.features);
    req.meta = load_meta(o.labels, req.features.rows());
    req.metric = to_metric(o.metric);
    req.method = method;
    req.jaccard = o.jp;
    req.ca = o.cp;
    req.lambda = lambda;
    req.threads = resolve_threads(o.threads);
    return req;
}

void write_assignment(const ClusterAssignment& assignment, const std::string& path) {
    std::ofstream file(path, std::ios::trunc);
    if (!file) throw io::IoError("cannot open " + path + " for writing");
    file << "index,cluster\n";
    for (std::size_t i = 0; i < assignment.labels.size(); ++i)
        file << i << ',' << assignment.labels[i] << '\n';
    if (!file) throw io::IoError("write failed: " + path);
}

void stats_row(std::ofstream& csv, const std::string& sweep, Method method,
               const JaccardParams* jp, const CaJaccardParams* cp,
               const NeighborStats& s) {
    csv << sweep << ',' << to_string(method) << ',';
    if (jp)
        csv << jp->k1 << ',' << jp->k2 << ",,,,";
    else
        csv << ",," << cp->k1_intra << ',' << cp->k1_inter << ',' << cp->k2_intra << ','
            << cp->k2_inter;
    char buf[160];
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%.6f\n", s.mean_inter_proportion,
                  s.mean_inter_weight, s.neighbor_accuracy_support,
                  s.neighbor_accuracy_weighted);
    csv << buf;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"camera-aware Jaccard distances for re-identification feature sets"};
    app.require_subcommand(1);

    // --- synth ---------------------------------------------------------
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic camera-biased dataset");
    SynthConfig synth_cfg;
    std::string synth_out;
    synth_cmd->add_option("--identities", synth_cfg.num_identities, "identity count");
    synth_cmd->add_option("--samples-per-identity", synth_cfg.samples_per_identity,
                          "samples per identity");
    synth_cmd->add_option("--cameras", synth_cfg.num_cameras, "camera count");
    synth_cmd->add_option("--dim", synth_cfg.feature_dim, "feature dimension");
    synth_cmd->add_option("--sigma-id", synth_cfg.identity_spread, "identity spread");
    synth_cmd->add_option("--beta", synth_cfg.camera_bias, "camera bias scale");
    synth_cmd->add_option("--sigma-noise", synth_cfg.noise_sigma, "per-sample noise");
    synth_cmd->add_option("--seed", synth_cfg.seed, "RNG seed");
    synth_cmd->add_option("--out", synth_out, "output prefix (.cajf/.csv appended)")->required();
    synth_cmd->callback([&] {
        SynthData data = generate(synth_cfg);
        data.features = io::quantize_to_file_precision(data.features);
        io::write_features(data.features, synth_out + ".cajf");
        io::write_labels(data.meta, synth_out + ".csv");
        std::printf("synth: wrote %s.cajf (%lldx%lld) and %s.csv\n", synth_out.c_str(),
                    static_cast<long long>(data.features.rows()),
                    static_cast<long long>(data.features.cols()), synth_out.c_str());
    });

    // --- distance ------------------------------------------------------
    auto* dist_cmd = app.add_subcommand("distance", "original pairwise distance matrix");
    PipelineOpts dist_opts;
    add_common(dist_cmd, dist_opts, false);
    add_out(dist_cmd, dist_opts);
    dist_cmd->callback([&] {
        const FeatureMatrix features = io::read_features(dist_opts.features);
        const SampleMeta meta = load_meta(dist_opts.labels, features.rows());
        validate_inputs(features, meta);
        const DistanceMatrix dist = original_distance(
            features, features, to_metric(dist_opts.metric), resolve_threads(dist_opts.threads));
        io::write_matrix(dist, dist_opts.out, to_format(dist_opts.format));
        report_matrix("distance", dist, dist_opts.out);
    });

    // --- jaccard -------------------------------------------------------
    auto* jac_cmd = app.add_subcommand("jaccard", "baseline Jaccard distance matrix");
    PipelineOpts jac_opts;
    add_common(jac_cmd, jac_opts, false);
    add_out(jac_cmd, jac_opts);
    add_jaccard_params(jac_cmd, jac_opts.jp);
    jac_cmd->add_option("--lambda", jac_opts.lambda, "blend weight on the original distance");
    jac_cmd->callback([&] {
        const DistanceMatrix dist =
            jaccard_pipeline(make_request(jac_opts, Method::jaccard, jac_opts.lambda));
        io::write_matrix(dist, jac_opts.out, to_format(jac_opts.format));
        report_matrix("jaccard", dist, jac_opts.out);
    });

    // --- cajaccard -----------------------------------------------------
    auto* caj_cmd = app.add_subcommand("cajaccard", "camera-aware Jaccard distance matrix");
    PipelineOpts caj_opts;
    add_common(caj_cmd, caj_opts, true);
    add_out(caj_cmd, caj_opts);
    add_ca_params(caj_cmd, caj_opts.cp);
    caj_cmd->add_option("--lambda", caj_opts.lambda, "blend weight on the original distance");
    caj_cmd->callback([&] {
        const DistanceMatrix dist =
            ca_jaccard_pipeline(make_request(caj_opts, Method::ca_jaccard, caj_opts.lambda));
        io::write_matrix(dist, caj_opts.out, to_format(caj_opts.format));
        report_matrix("cajaccard", dist, caj_opts.out);
    });

    // --- rerank --------------------------------------------------------
    auto* rr_cmd = app.add_subcommand("rerank", "re-rank query-vs-gallery distances");
    PipelineOpts rr_opts;
    rr_opts.lambda = 0.3;
    std::string rr_query_features;
    std::string rr_query_labels;
    std::string rr_method = "cajaccard";
    add_common(rr_cmd, rr_opts, false);
    add_out(rr_cmd, rr_opts);
    add_jaccard_params(rr_cmd, rr_opts.jp);
    add_ca_params(rr_cmd, rr_opts.cp);
    rr_cmd->add_option("--query-features", rr_query_features, "query feature file")->required();
    rr_cmd->add_option("--query-labels", rr_query_labels, "query label CSV");
    rr_cmd->add_option("--method", rr_method, "distance method")
        ->check(CLI::IsMember({"jaccard", "cajaccard"}));
    rr_cmd->add_option("--lambda", rr_opts.lambda, "blend weight on the original distance");
    rr_cmd->callback([&] {
        const bool ca = rr_method == "cajaccard";
        const bool jaccard_flags = rr_cmd->count("--k1") || rr_cmd->count("--k2");
        const bool ca_flags = rr_cmd->count("--k1-intra") || rr_cmd->count("--k1-inter") ||
                              rr_cmd->count("--k2-intra") || rr_cmd->count("--k2-inter");
        if (ca && jaccard_flags)
            throw CLI::ValidationError("rerank",
                                       "--k1/--k2 apply to --method jaccard only");
        if (!ca && ca_flags)
            throw CLI::ValidationError("rerank",
                                       "--k1-*/--k2-* apply to --method cajaccard only");
        if (rr_opts.labels.empty() != rr_query_labels.empty())
            throw CLI::ValidationError("rerank",
                                       "provide both --labels and --query-labels, or neither");
        if (ca && rr_opts.labels.empty())
            throw CLI::ValidationError("rerank", "--method cajaccard needs camera labels");

        PipelineRequest req =
            make_request(rr_opts, ca ? Method::ca_jaccard : Method::jaccard, rr_opts.lambda);
        req.mode = PipelineMode::query_gallery;
        req.query_features = io::read_features(rr_query_features);
        req.query_meta = load_meta(rr_query_labels, req.query_features->rows());
        const DistanceMatrix dist = rerank(req);
        io::write_matrix(dist, rr_opts.out, to_format(rr_opts.format));
        report_matrix("rerank", dist, rr_opts.out);
    });

    // --- cluster -------------------------------------------------------
    auto* cl_cmd = app.add_subcommand("cluster", "DBSCAN over a Jaccard-like matrix");
    PipelineOpts cl_opts;
    std::string cl_matrix;
    std::string cl_method = "cajaccard";
    std::string cl_out;
    double cl_eps = 0.6;
    int cl_min_samples = 4;
    cl_cmd->add_option("--matrix", cl_matrix, "precomputed matrix (.cajd)");
    cl_cmd->add_option("--features", cl_opts.features, "feature file (.cajf)");
    cl_cmd->add_option("--labels", cl_opts.labels, "label CSV");
    cl_cmd->add_option("--metric", cl_opts.metric, "original distance metric")
        ->check(CLI::IsMember({"cosine", "euclidean"}));
    cl_cmd->add_option("--method", cl_method, "distance method")
        ->check(CLI::IsMember({"jaccard", "cajaccard"}));
    add_jaccard_params(cl_cmd, cl_opts.jp);
    add_ca_params(cl_cmd, cl_opts.cp);
    cl_cmd->add_option("--lambda", cl_opts.lambda, "blend weight on the original distance");
    cl_cmd->add_option("--eps", cl_eps, "DBSCAN radius");
    cl_cmd->add_option("--min-samples", cl_min_samples, "DBSCAN core threshold");
    cl_cmd->add_option("--threads", cl_opts.threads, "worker threads (0 = hardware)");
    cl_cmd->add_option("--out", cl_out, "assignment CSV path");
    cl_cmd->callback([&] {
        if (cl_matrix.empty() == cl_opts.features.empty())
            throw CLI::ValidationError("cluster",
                                       "provide exactly one of --matrix or --features");
        DistanceMatrix dist;
        SampleMeta meta;
        if (!cl_matrix.empty()) {
            dist = io::read_matrix(cl_matrix);
            if (!cl_opts.labels.empty()) meta = io::read_labels(cl_opts.labels);
        } else {
            const bool ca = cl_method == "cajaccard";
            if (ca && cl_opts.labels.empty())
                throw CLI::ValidationError("cluster", "--method cajaccard needs camera labels");
            PipelineRequest req =
                make_request(cl_opts, ca ? Method::ca_jaccard : Method::jaccard, cl_opts.lambda);
            meta = req.meta;
            dist = ca ? ca_jaccard_pipeline(req) : jaccard_pipeline(req);
        }
        const ClusterAssignment assignment = dbscan(dist, cl_eps, cl_min_samples);
        if (!cl_out.empty()) write_assignment(assignment, cl_out);

        int noise = 0;
        for (int label : assignment.labels) noise += label == ClusterAssignment::kNoise;
        std::printf("%-16s %zu\n", "samples", assignment.labels.size());
        std::printf("%-16s %d\n", "clusters", assignment.num_clusters);
        std::printf("%-16s %d\n", "noise", noise);
        if (meta.has_identity()) {
            const ClusterAgreement agreement = cluster_agreement(assignment, meta);
            std::printf("%-16s %.4f\n", "ari", agreement.ari);
            std::printf("%-16s %.4f\n", "pairwise_f", agreement.pairwise_f);
        }
    });

    // --- eval ----------------------------------------------------------
    auto* ev_cmd = app.add_subcommand("eval", "mAP/CMC over a query-gallery matrix");
    std::string ev_matrix;
    std::string ev_query_labels;
    std::string ev_gallery_labels;
    std::vector<int> ev_cmc = {1, 5, 10};
    ev_cmd->add_option("--matrix", ev_matrix, "query-gallery matrix (.cajd)")->required();
    ev_cmd->add_option("--query-labels", ev_query_labels, "query label CSV")->required();
    ev_cmd->add_option("--labels", ev_gallery_labels, "gallery label CSV")->required();
    ev_cmd->add_option("--cmc", ev_cmc, "CMC ranks to report");
    ev_cmd->callback([&] {
        const DistanceMatrix dist = io::read_matrix(ev_matrix);
        const EvalResult result = evaluate(dist, io::read_labels(ev_query_labels),
                                           io::read_labels(ev_gallery_labels), ev_cmc);
        std::printf("%-16s %.4f\n", "mAP", result.mean_ap);
        for (const auto& [rank, value] : result.cmc) {
            char name[32];
            std::snprintf(name, sizeof name, "CMC@%d", rank);
            std::printf("%-16s %.4f\n", name, value);
        }
        std::printf("%-16s %d\n", "valid_queries", result.valid_queries);
        std::printf("%-16s %d\n", "skipped_queries", result.skipped_queries);
    });

    // --- stats ---------------------------------------------------------
    auto* st_cmd = app.add_subcommand("stats", "neighbor-reliability statistics and parameter sweep");
    PipelineOpts st_opts;
    add_common(st_cmd, st_opts, true);
    add_jaccard_params(st_cmd, st_opts.jp);
    add_ca_params(st_cmd, st_opts.cp);
    st_cmd->add_option("--out", st_opts.out, "output CSV path")->required();
    st_cmd->callback([&] {
        const FeatureMatrix features = io::read_features(st_opts.features);
        const SampleMeta meta = io::read_labels(st_opts.labels);
        validate_inputs(features, meta);
        const int threads = resolve_threads(st_opts.threads);
        const DistanceMatrix dist =
            original_distance(features, features, to_metric(st_opts.metric), threads);
        const RankingLists lists(dist, meta, threads);

        std::ofstream csv(st_opts.out, std::ios::trunc);
        if (!csv) throw io::IoError("cannot open " + st_opts.out + " for writing");
        csv << "sweep,method,k1,k2,k1_intra,k1_inter,k2_intra,k2_inter,"
               "inter_proportion,inter_weight,accuracy_support,accuracy_weighted\n";

        const NeighborStats base_stats =
            neighbor_stats(jaccard_vectors(dist, lists, st_opts.jp, threads), meta);
        stats_row(csv, "default", Method::jaccard, &st_opts.jp, nullptr, base_stats);
        const NeighborStats ca_stats =
            neighbor_stats(ca_jaccard_vectors(dist, lists, st_opts.cp, threads), meta);
        stats_row(csv, "default", Method::ca_jaccard, nullptr, &st_opts.cp, ca_stats);

        auto sweep_row = [&](const std::string& name, CaJaccardParams p) {
            p.k2_intra = std::min(p.k2_intra, p.k1_intra);
            p.k2_inter = std::min(p.k2_inter, p.k1_inter);
            const NeighborStats s = neighbor_stats(ca_jaccard_vectors(dist, lists, p, threads), meta);
            stats_row(csv, name, Method::ca_jaccard, nullptr, &p, s);
        };
        for (int k : {1, 5, 10, 15, 20, 25, 30}) {
            CaJaccardParams p = st_opts.cp;
            p.k1_intra = k;
            sweep_row("k1_intra", p);
        }
        for (int k : {5, 15, 20, 25, 30, 35}) {
            CaJaccardParams p = st_opts.cp;
            p.k1_inter = k;
            sweep_row("k1_inter", p);
        }
        for (int intra = 1; intra <= 5; ++intra) {
            CaJaccardParams p = st_opts.cp;
            p.k2_intra = intra;
            p.k2_inter = 6 - intra;
            sweep_row("k2_split", p);
        }
        if (!csv) throw io::IoError("write failed: " + st_opts.out);

        std::printf("%-24s %-12s %s\n", "stat", "jaccard", "ca_jaccard");
        std::printf("%-24s %-12.6f %.6f\n", "inter_proportion",
                    base_stats.mean_inter_proportion, ca_stats.mean_inter_proportion);
        std::printf("%-24s %-12.6f %.6f\n", "inter_weight", base_stats.mean_inter_weight,
                    ca_stats.mean_inter_weight);
        std::printf("%-24s %-12.6f %.6f\n", "accuracy_support",
                    base_stats.neighbor_accuracy_support, ca_stats.neighbor_accuracy_support);
        std::printf("%-24s %-12.6f %.6f\n", "accuracy_weighted",
                    base_stats.neighbor_accuracy_weighted,
                    ca_stats.neighbor_accuracy_weighted);
        std::printf("stats: wrote %s\n", st_opts.out.c_str());
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace caj::cli
