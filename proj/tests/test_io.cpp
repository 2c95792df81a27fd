#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caj/io.hpp"
#include "caj/synth.hpp"
#include "test_util.hpp"

#include <fstream>

using namespace caj;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("feature files round-trip float32 data exactly") {
    testutil::TempDir dir("caj_io");
    FeatureMatrix f(2, 3);
    f << 0.5, -1.25, 3.0, 0.0, 42.0, -0.125;  // exactly representable in float32
    const std::string path = dir.file("f.cajf");
    io::write_features(f, path);
    const FeatureMatrix back = io::read_features(path);
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    CHECK((back.array() == f.array()).all());
}

TEST_CASE("feature writing is idempotent after one float32 quantization") {
    testutil::TempDir dir("caj_io");
    const SynthData data = generate(SynthConfig{
        .num_identities = 4, .samples_per_identity = 3, .feature_dim = 8});
    const std::string p1 = dir.file("a.cajf");
    const std::string p2 = dir.file("b.cajf");
    io::write_features(data.features, p1);
    const FeatureMatrix once = io::read_features(p1);
    CHECK((once.array() == io::quantize_to_file_precision(data.features).array()).all());
    io::write_features(once, p2);
    CHECK(slurp(p1) == slurp(p2));
    CHECK((io::read_features(p2).array() == once.array()).all());
}

TEST_CASE("feature file header errors are distinct") {
    testutil::TempDir dir("caj_io");
    FeatureMatrix f(2, 2);
    f.setOnes();
    const std::string path = dir.file("f.cajf");
    io::write_features(f, path);
    const std::string good = slurp(path);

    const std::string bad_magic_path = dir.file("bad_magic.cajf");
    spit(bad_magic_path, "XXXX" + good.substr(4));
    CHECK_THROWS_AS(io::read_features(bad_magic_path), io::BadMagicError);

    const std::string bad_version_path = dir.file("bad_version.cajf");
    std::string bumped = good;
    bumped[4] = 9;
    spit(bad_version_path, bumped);
    CHECK_THROWS_AS(io::read_features(bad_version_path), io::UnsupportedVersionError);

    const std::string truncated_path = dir.file("short.cajf");
    spit(truncated_path, good.substr(0, good.size() - 4));  // one float missing
    CHECK_THROWS_AS(io::read_features(truncated_path), io::TruncatedError);

    const std::string trailing_path = dir.file("long.cajf");
    spit(trailing_path, good + "zz");
    CHECK_THROWS_AS(io::read_features(trailing_path), io::FormatError);

    CHECK_THROWS_AS(io::read_features(dir.file("missing.cajf")), io::IoError);
}

TEST_CASE("label files round-trip with and without identities") {
    testutil::TempDir dir("caj_io");
    SampleMeta meta;
    meta.camera = {0, 1, 1};
    meta.identity = {4, -1, 9};
    const std::string path = dir.file("labels.csv");
    io::write_labels(meta, path);
    const SampleMeta back = io::read_labels(path);
    CHECK(back.camera == meta.camera);
    CHECK(back.identity == meta.identity);

    SampleMeta bare;
    bare.camera = {2, 3};
    io::write_labels(bare, path);
    const SampleMeta bare_back = io::read_labels(path);
    CHECK(bare_back.camera == bare.camera);
    CHECK(!bare_back.has_identity());
}

TEST_CASE("label file format errors") {
    testutil::TempDir dir("caj_io");
    const std::string path = dir.file("labels.csv");

    spit(path, "camera,index\n0,0\n");
    CHECK_THROWS_AS(io::read_labels(path), io::FormatError);

    spit(path, "index,camera\n0,0\n2,1\n");  // gap in indices
    CHECK_THROWS_AS(io::read_labels(path), io::FormatError);

    spit(path, "index,camera\n0,zero\n");
    CHECK_THROWS_AS(io::read_labels(path), io::FormatError);

    spit(path, "index,camera,identity\n0,0\n");  // short row
    CHECK_THROWS_AS(io::read_labels(path), io::FormatError);

    spit(path, "index,camera\n");
    CHECK_THROWS_AS(io::read_labels(path), io::FormatError);
}

TEST_CASE("binary matrix files round-trip bit for bit, including the kind") {
    testutil::TempDir dir("caj_io");
    DistanceMatrix d;
    d.kind = DistanceKind::ca_jaccard;
    d.data.resize(3, 3);
    d.data << 0.0, 0.123456789123456789, 1.0 / 3.0,
              0.123456789123456789, 0.0, 0.987654321,
              1.0 / 3.0, 0.987654321, 0.0;
    const std::string path = dir.file("d.cajd");
    io::write_matrix(d, path, io::MatrixFileFormat::binary);
    const DistanceMatrix back = io::read_matrix(path);
    CHECK(back.kind == DistanceKind::ca_jaccard);
    CHECK((back.data.array() == d.data.array()).all());
    CHECK((back.data - back.data.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv matrices round-trip doubles exactly through decimal text") {
    testutil::TempDir dir("caj_io");
    DistanceMatrix d;
    d.kind = DistanceKind::jaccard;
    d.data.resize(2, 3);
    d.data << 0.0, 2.0 / 3.0, 1e-17, 0.25, 1.0, 0.3333333333333333;
    const std::string path = dir.file("d.csv");
    io::write_matrix(d, path, io::MatrixFileFormat::csv);
    const Matrix back = io::read_matrix_csv(path);
    CHECK((back.array() == d.data.array()).all());
}

TEST_CASE("a 1x1 zero matrix becomes a single '0' record") {
    testutil::TempDir dir("caj_io");
    DistanceMatrix d;
    d.kind = DistanceKind::jaccard;
    d.data = Matrix::Zero(1, 1);
    const std::string path = dir.file("zero.csv");
    io::write_matrix(d, path, io::MatrixFileFormat::csv);
    CHECK(slurp(path) == "0\n");
}

TEST_CASE("matrix file header errors are distinct") {
    testutil::TempDir dir("caj_io");
    DistanceMatrix d;
    d.kind = DistanceKind::jaccard;
    d.data = Matrix::Zero(2, 2);
    const std::string path = dir.file("d.cajd");
    io::write_matrix(d, path, io::MatrixFileFormat::binary);
    const std::string good = slurp(path);

    spit(path, "CAJF" + good.substr(4));  // feature magic on a matrix file
    CHECK_THROWS_AS(io::read_matrix(path), io::BadMagicError);

    std::string bumped = good;
    bumped[4] = 2;
    spit(path, bumped);
    CHECK_THROWS_AS(io::read_matrix(path), io::UnsupportedVersionError);

    spit(path, good.substr(0, good.size() - 1));
    CHECK_THROWS_AS(io::read_matrix(path), io::TruncatedError);

    std::string bad_kind = good;
    bad_kind[8] = 7;
    spit(path, bad_kind);
    CHECK_THROWS_AS(io::read_matrix(path), io::FormatError);
}
