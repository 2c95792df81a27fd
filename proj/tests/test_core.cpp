#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caj/types.hpp"

#include <limits>

using namespace caj;

TEST_CASE("validate_inputs accepts well-formed input") {
    FeatureMatrix f(3, 2);
    f << 1, 2, 3, 4, 5, 6;
    SampleMeta meta;
    meta.camera = {0, 1, 0};
    CHECK_NOTHROW(validate_inputs(f, meta));
}

TEST_CASE("validate_inputs rejects a camera/feature length mismatch") {
    FeatureMatrix f(3, 2);
    f.setOnes();
    SampleMeta meta;
    meta.camera = {0, 1};
    CHECK_THROWS_AS(validate_inputs(f, meta), std::invalid_argument);
}

TEST_CASE("validate_inputs names the row holding a NaN") {
    FeatureMatrix f(3, 2);
    f.setOnes();
    f(1, 0) = std::numeric_limits<double>::quiet_NaN();
    SampleMeta meta;
    meta.camera = {0, 0, 1};
    CHECK_THROWS_WITH_AS(validate_inputs(f, meta), doctest::Contains("row 1"),
                         std::invalid_argument);
}

TEST_CASE("validate_inputs rejects empty or negative cameras") {
    FeatureMatrix f(2, 2);
    f.setOnes();
    SampleMeta empty;
    CHECK_THROWS_AS(validate_inputs(f, empty), std::invalid_argument);
    SampleMeta negative;
    negative.camera = {0, -2};
    CHECK_THROWS_AS(validate_inputs(f, negative), std::invalid_argument);
}

TEST_CASE("validate_inputs rejects identity length mismatch") {
    FeatureMatrix f(2, 2);
    f.setOnes();
    SampleMeta meta;
    meta.camera = {0, 1};
    meta.identity = {7};
    CHECK_THROWS_AS(validate_inputs(f, meta), std::invalid_argument);
}

TEST_CASE("parameter invariants") {
    CHECK_NOTHROW(JaccardParams{}.validate());
    CHECK_NOTHROW(CaJaccardParams{}.validate());
    CHECK_THROWS_AS((JaccardParams{.k1 = 5, .k2 = 5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((JaccardParams{.k1 = 0, .k2 = 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CaJaccardParams{.k1_intra = 2, .k2_intra = 3}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((CaJaccardParams{.k1_inter = 3, .k2_inter = 4}.validate()),
                    std::invalid_argument);
}

TEST_CASE("sparse weight vector helpers") {
    SparseWeightVector v;
    v.indices = {0, 2, 5};
    v.weights = {0.25, 0.5, 0.25};
    CHECK(v.l1_mass() == doctest::Approx(1.0));
    CHECK(v.at(2) == doctest::Approx(0.5));
    CHECK(v.at(3) == 0.0);
    const Vector dense = v.to_dense(6);
    CHECK(dense[5] == doctest::Approx(0.25));
    CHECK(dense[1] == 0.0);
}

TEST_CASE("validate_matrix enforces kind-specific invariants") {
    DistanceMatrix ok;
    ok.kind = DistanceKind::jaccard;
    ok.data = Matrix::Zero(2, 2);
    ok.data(0, 1) = ok.data(1, 0) = 0.5;
    CHECK_NOTHROW(validate_matrix(ok));

    DistanceMatrix too_big = ok;
    too_big.data(0, 1) = too_big.data(1, 0) = 1.5;
    CHECK_THROWS_AS(validate_matrix(too_big), std::invalid_argument);
    too_big.kind = DistanceKind::original;  // original distances may exceed 1
    CHECK_NOTHROW(validate_matrix(too_big));

    DistanceMatrix asym = ok;
    asym.data(0, 1) = 0.25;
    CHECK_THROWS_AS(validate_matrix(asym), std::invalid_argument);

    DistanceMatrix negative = ok;
    negative.data(1, 0) = -0.1;
    CHECK_THROWS_AS(validate_matrix(negative), std::invalid_argument);
}
