#include <doctest.h>

#include <cstdio>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/features/feature_matrix.hpp"
#include "star_sense/ingest/preprocess.hpp"
#include "star_sense/sentiment/lexicon.hpp"

using namespace starsense;
using namespace starsense::features;

namespace {

ingest::ReviewTable table_of(const std::string& csv_text) {
    return ingest::table_from_csv(parse_csv(csv_text));
}

Matrix zero_sentiments(std::size_t n) { return Matrix(n, sentiment::kNumCategories); }

}  // namespace

TEST_CASE("one_hot encodes levels lexicographically with unit rows") {
    auto oh = one_hot_encode(table_of("brand\nA\nB\nA\n"), "brand");
    REQUIRE(oh.names == std::vector<std::string>{"brand=A", "brand=B"});
    CHECK(oh.columns(0, 0) == 1.0);
    CHECK(oh.columns(0, 1) == 0.0);
    CHECK(oh.columns(1, 1) == 1.0);
    CHECK(oh.columns(2, 0) == 1.0);

    auto single = one_hot_encode(table_of("brand\nOnly\nOnly\n"), "brand");
    REQUIRE(single.names.size() == 1);
    CHECK(single.columns(0, 0) == 1.0);
    CHECK(single.columns(1, 0) == 1.0);

    // 65 levels produce 65 columns
    std::string csv = "manufacturerNumber\n";
    for (int i = 0; i < 65; ++i) csv += "MN" + std::to_string(100 + i) + "\n";
    auto wide = one_hot_encode(table_of(csv), "manufacturerNumber");
    CHECK(wide.names.size() == 65);
}

TEST_CASE("one_hot rows sum to one over each categorical") {
    auto oh = one_hot_encode(table_of("c\nx\ny\nz\nx\ny\n"), "c");
    for (std::size_t i = 0; i < oh.columns.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < oh.columns.cols(); ++j) sum += oh.columns(i, j);
        CHECK(sum == 1.0);
    }
}

TEST_CASE("assemble lays out sentiments, one-hots and numHelpful") {
    auto table = table_of(
        "brand,primaryCategories,reviews.numHelpful,reviews.rating\n"
        "A,c1,1,5\nB,c2,0,4\nA,c3,2,3\nB,c1,0,5\nA,c2,1,2\n");
    auto fm = assemble(table, zero_sentiments(5));
    CHECK(fm.n_cols() == 10 + 2 + 3 + 1);  // sentiments + brand + categories + numHelpful
    CHECK(fm.feature_names.front() == "anger");
    CHECK(fm.feature_names.back() == "reviews.numHelpful");
    CHECK(fm.y == std::vector<double>{5, 4, 3, 5, 2});
    CHECK(fm.encoding_map.at("brand=A") == 10);
    CHECK(fm.encoding_map.at("primaryCategories=c1") == 12);

    // zero rows is a valid, empty matrix: 10 sentiments + 0 levels + numHelpful
    auto empty = assemble(table_of("brand,primaryCategories,reviews.numHelpful,reviews.rating\n"),
                          zero_sentiments(0));
    CHECK(empty.n_rows() == 0);
    CHECK(empty.n_cols() == 11);

    CHECK_THROWS_AS(assemble(table, zero_sentiments(4)), RowMismatchError);
}

TEST_CASE("assemble preserves row order (row-id probe)") {
    auto table = table_of("brand,reviews.numHelpful,reviews.rating\nA,0,1\nB,1,2\nA,2,3\nB,3,4\n");
    Matrix sent = zero_sentiments(4);
    for (std::size_t i = 0; i < 4; ++i) sent(i, 0) = static_cast<double>(i);  // anger column as row id
    auto fm = assemble(table, sent);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(fm.x(i, 0) == static_cast<double>(i));
        CHECK(fm.x(i, fm.n_cols() - 1) == static_cast<double>(i));  // numHelpful mirrors row index
        CHECK(fm.y[i] == static_cast<double>(i + 1));
    }
}

TEST_CASE("pearson correlation: identity, sign flip, hand value, errors") {
    std::vector<double> a = {1, 2, 3};
    CHECK(pearson_correlation(a, a) == doctest::Approx(1.0));
    std::vector<double> neg = {-1, -2, -3};
    CHECK(pearson_correlation(a, neg) == doctest::Approx(-1.0));

    // hand computation: a=[1,2,3], b=[2,4,7]
    // centered a: [-1,0,1]; centered b: [-7/3,-1/3,8/3]
    // cov_sum = 7/3 + 0 + 8/3 = 5; ss_a = 2; ss_b = (49+1+64)/9 = 114/9
    // r = 5 / sqrt(2 * 114/9) = 0.99339926779878...
    std::vector<double> b = {2, 4, 7};
    CHECK(pearson_correlation(a, b) == doctest::Approx(0.99339926779878).epsilon(1e-10));

    std::vector<double> constant = {5, 5, 5};
    CHECK_THROWS_AS(pearson_correlation(a, constant), ConstantVectorError);
    std::vector<double> shorter = {1, 2};
    CHECK_THROWS_AS(pearson_correlation(a, shorter), LengthMismatchError);
    std::vector<double> one = {1};
    CHECK_THROWS_AS(pearson_correlation(one, one), LengthMismatchError);
}

TEST_CASE("pearson is symmetric and invariant to positive affine maps") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(30), b(30);
        for (std::size_t i = 0; i < 30; ++i) {
            a[i] = rng.next_normal();
            b[i] = 0.4 * a[i] + rng.next_normal();
        }
        const double r = pearson_correlation(a, b);
        CHECK(pearson_correlation(b, a) == doctest::Approx(r));
        std::vector<double> scaled = a;
        for (double& v : scaled) v = 3.5 * v + 11.0;
        CHECK(pearson_correlation(scaled, b) == doctest::Approx(r));
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
    }
}

TEST_CASE("prescreen flags strong target alignment") {
    FeatureMatrix fm;
    fm.y = {1, 2, 3, 4, 5, 1, 2, 3, 4, 5};

    // candidate equal to the target
    CHECK(prescreen(fm, fm.y, 0.5).flagged);
    CHECK(prescreen(fm, fm.y, 0.5).r == doctest::Approx(1.0));

    // seeded noise at n=1000 stays far below the threshold
    FeatureMatrix big;
    Rng rng(77);
    big.y.resize(1000);
    std::vector<double> noise(1000);
    for (std::size_t i = 0; i < 1000; ++i) {
        big.y[i] = static_cast<double>(1 + rng.next_index(5));
        noise[i] = rng.next_normal();
    }
    auto verdict = prescreen(big, noise, 0.5);
    CHECK(!verdict.flagged);
    CHECK(std::fabs(verdict.r) < 0.2);
}

TEST_CASE("feature csv round-trips matrix, names and target exactly") {
    FeatureMatrix fm;
    fm.feature_names = {"anger", "brand=A", "reviews.numHelpful"};
    fm.x = Matrix(3, 3);
    Rng rng(13);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) fm.x(i, j) = rng.next_normal();
    fm.y = {5, 4, 1};

    const std::string path = "test_feature_roundtrip.csv";
    save_feature_csv(fm, path);
    auto loaded = load_feature_csv(path);
    CHECK(loaded.feature_names == fm.feature_names);
    CHECK(loaded.y == fm.y);
    CHECK(loaded.x.data() == fm.x.data());
    CHECK(loaded.encoding_map.at("brand=A") == 1);
    std::remove(path.c_str());
}
