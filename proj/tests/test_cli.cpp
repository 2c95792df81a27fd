#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caj/cli.hpp"
#include "caj/eval.hpp"
#include "caj/io.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <fstream>

using namespace caj;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int run_cli(std::initializer_list<std::string> args) {
    return cli::run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("synth then cajaccard is deterministic across runs and threads") {
    testutil::TempDir dir("caj_cli");
    const std::string prefix = dir.file("s1");
    REQUIRE(run_cli({"synth", "--seed", "42", "--identities", "12",
                     "--samples-per-identity", "6", "--out", prefix}) == cli::kExitOk);

    const std::string out1 = dir.file("d1.cajd");
    const std::string out2 = dir.file("d2.cajd");
    const std::string out4 = dir.file("d4.cajd");
    const std::vector<std::string> base = {"cajaccard", "--features", prefix + ".cajf",
                                           "--labels", prefix + ".csv"};
    auto with = [&](const std::string& out, const std::string& threads) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--out", out, "--threads", threads});
        return cli::run(args);
    };
    REQUIRE(with(out1, "1") == cli::kExitOk);
    REQUIRE(with(out2, "1") == cli::kExitOk);
    REQUIRE(with(out4, "4") == cli::kExitOk);
    CHECK(slurp(out1) == slurp(out2));  // repeated runs
    CHECK(slurp(out1) == slurp(out4));  // thread counts
    CHECK(io::read_matrix(out1).kind == DistanceKind::ca_jaccard);
}

TEST_CASE("baseline flags are rejected on the camera-aware subcommand") {
    testutil::TempDir dir("caj_cli");
    const std::string prefix = dir.file("s");
    REQUIRE(run_cli({"synth", "--identities", "4", "--samples-per-identity", "4",
                     "--out", prefix}) == cli::kExitOk);
    CHECK(run_cli({"cajaccard", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                   "--k1", "30", "--out", dir.file("d.cajd")}) == cli::kExitUsage);
}

TEST_CASE("unknown subcommands and missing flags are usage errors") {
    CHECK(run_cli({"frobnicate"}) == cli::kExitUsage);
    CHECK(run_cli({"cajaccard"}) == cli::kExitUsage);  // --features missing
    CHECK(run_cli({}) == cli::kExitUsage);
}

TEST_CASE("runtime problems exit with code 2 and io errors stay distinct") {
    testutil::TempDir dir("caj_cli");
    CHECK(run_cli({"cajaccard", "--features", dir.file("absent.cajf"), "--labels",
                   dir.file("absent.csv"), "--out", dir.file("d.cajd")}) ==
          cli::kExitRuntime);

    // clustering refuses an original-kind matrix
    const std::string prefix = dir.file("s");
    REQUIRE(run_cli({"synth", "--identities", "4", "--samples-per-identity", "4",
                     "--out", prefix}) == cli::kExitOk);
    const std::string orig = dir.file("orig.cajd");
    REQUIRE(run_cli({"distance", "--features", prefix + ".cajf", "--out", orig}) ==
            cli::kExitOk);
    CHECK(run_cli({"cluster", "--matrix", orig}) == cli::kExitRuntime);
}

TEST_CASE("rerank validates method-specific flags") {
    testutil::TempDir dir("caj_cli");
    const std::string prefix = dir.file("s");
    REQUIRE(run_cli({"synth", "--identities", "6", "--samples-per-identity", "4",
                     "--out", prefix}) == cli::kExitOk);
    // --k1 belongs to the baseline method
    CHECK(run_cli({"rerank", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                   "--query-features", prefix + ".cajf", "--query-labels", prefix + ".csv",
                   "--method", "cajaccard", "--k1", "10",
                   "--out", dir.file("r.cajd")}) == cli::kExitUsage);
    CHECK(run_cli({"rerank", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                   "--query-features", prefix + ".cajf", "--query-labels", prefix + ".csv",
                   "--method", "jaccard", "--k1-intra", "3",
                   "--out", dir.file("r.cajd")}) == cli::kExitUsage);
    // well-formed rerank emits a query x gallery block
    REQUIRE(run_cli({"rerank", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                     "--query-features", prefix + ".cajf", "--query-labels", prefix + ".csv",
                     "--out", dir.file("r.cajd")}) == cli::kExitOk);
    const DistanceMatrix r = io::read_matrix(dir.file("r.cajd"));
    CHECK(r.rows() == 24);
    CHECK(r.cols() == 24);
    CHECK(r.kind == DistanceKind::blended);  // default rerank lambda is 0.3
}

TEST_CASE("cluster command reports agreement and writes assignments") {
    testutil::TempDir dir("caj_cli");
    const std::string prefix = dir.file("s1");
    REQUIRE(run_cli({"synth", "--out", prefix}) == cli::kExitOk);  // canonical fixture
    const std::string assignment = dir.file("assign.csv");
    REQUIRE(run_cli({"cluster", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                     "--eps", "0.6", "--min-samples", "4", "--out", assignment}) ==
            cli::kExitOk);
    const std::string csv = slurp(assignment);
    CHECK(csv.substr(0, 14) == "index,cluster\n");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 401);  // header + 400 rows
}

TEST_CASE("stats command writes the sweep CSV") {
    testutil::TempDir dir("caj_cli");
    const std::string prefix = dir.file("s");
    REQUIRE(run_cli({"synth", "--identities", "10", "--samples-per-identity", "6",
                     "--out", prefix}) == cli::kExitOk);
    const std::string out = dir.file("stats.csv");
    REQUIRE(run_cli({"stats", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                     "--out", out}) == cli::kExitOk);
    std::ifstream csv(out);
    std::string header;
    std::getline(csv, header);
    CHECK(header ==
          "sweep,method,k1,k2,k1_intra,k1_inter,k2_intra,k2_inter,"
          "inter_proportion,inter_weight,accuracy_support,accuracy_weighted");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2 + 7 + 6 + 5);  // defaults + three sweeps
}

TEST_CASE("matrix format flag emits csv that reloads exactly") {
    testutil::TempDir dir("caj_cli");
    const std::string prefix = dir.file("s");
    REQUIRE(run_cli({"synth", "--identities", "5", "--samples-per-identity", "4",
                     "--out", prefix}) == cli::kExitOk);
    const std::string bin = dir.file("d.cajd");
    const std::string csv = dir.file("d.csv");
    REQUIRE(run_cli({"jaccard", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                     "--k1", "6", "--k2", "3", "--out", bin}) == cli::kExitOk);
    REQUIRE(run_cli({"jaccard", "--features", prefix + ".cajf", "--labels", prefix + ".csv",
                     "--k1", "6", "--k2", "3", "--out", csv, "--format", "csv"}) ==
            cli::kExitOk);
    const DistanceMatrix from_bin = io::read_matrix(bin);
    const Matrix from_csv = io::read_matrix_csv(csv);
    CHECK((from_bin.data.array() == from_csv.array()).all());
}

#ifdef CAJ_CLI_PATH
TEST_CASE("the installed binary prints the eval table") {
    testutil::TempDir dir("caj_cli");
    // one query (id 7, cam 0); positives at ranks 1 and 3 across cameras
    DistanceMatrix d;
    d.kind = DistanceKind::ca_jaccard;
    d.data.resize(1, 5);
    d.data << 0.1, 0.2, 0.3, 0.4, 0.5;
    io::write_matrix(d, dir.file("d.cajd"), io::MatrixFileFormat::binary);
    SampleMeta qmeta;
    qmeta.camera = {0};
    qmeta.identity = {7};
    io::write_labels(qmeta, dir.file("q.csv"));
    SampleMeta gmeta;
    gmeta.camera = {1, 1, 2, 1, 2};
    gmeta.identity = {7, 1, 7, 2, 3};
    io::write_labels(gmeta, dir.file("g.csv"));

    const std::string out = dir.file("eval.txt");
    const std::string cmd = std::string(CAJ_CLI_PATH) + " eval --matrix " +
                            dir.file("d.cajd") + " --query-labels " + dir.file("q.csv") +
                            " --labels " + dir.file("g.csv") + " --cmc 1 > " + out;
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("mAP") != std::string::npos);
    CHECK(text.find("0.8333") != std::string::npos);
    CHECK(text.find("CMC@1") != std::string::npos);
    CHECK(text.find("1.0000") != std::string::npos);
}
#endif
