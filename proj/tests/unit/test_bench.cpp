#include <doctest.h>

#include "star_sense/bench/benchmark.hpp"
#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/models/model.hpp"

using namespace starsense;
using namespace starsense::bench;
using starsense::models::Algorithm;
using starsense::models::ModelSpec;
using starsense::models::Task;

namespace {

features::FeatureMatrix make_fm(std::size_t n, std::uint64_t seed, bool classification,
                                const std::vector<std::size_t>& class_counts = {}) {
    features::FeatureMatrix fm;
    fm.feature_names = {"x0", "x1"};
    fm.x = Matrix(n, 2);
    fm.y.resize(n);
    Rng rng(seed);
    if (classification) {
        std::size_t row = 0;
        for (std::size_t cls = 0; cls < class_counts.size(); ++cls)
            for (std::size_t i = 0; i < class_counts[cls]; ++i) fm.y[row++] = static_cast<double>(cls + 1);
        REQUIRE(row == n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        fm.x(i, 0) = rng.next_double(-1.0, 1.0);
        fm.x(i, 1) = rng.next_normal();
        if (!classification) fm.y[i] = 2.0 * fm.x(i, 0) + 0.1 * rng.next_normal();
    }
    return fm;
}

ModelSpec quick_spec(Algorithm algorithm, Task task, std::map<std::string, double> hp = {}) {
    ModelSpec spec;
    spec.algorithm = algorithm;
    spec.task = task;
    spec.seed = 3;
    spec.hyperparams = std::move(hp);
    return spec;
}

}  // namespace

TEST_CASE("holdout split is disjoint, complete and deterministic") {
    auto fm = make_fm(100, 1, false);
    auto split = split_holdout(fm, Task::regression, 0.2, 42);
    CHECK(split.test_indices.size() == 20);
    CHECK(split.train_indices.size() == 80);
    std::vector<bool> seen(100, false);
    for (auto i : split.train_indices) seen[i] = true;
    for (auto i : split.test_indices) {
        CHECK(!seen[i]);
        seen[i] = true;
    }
    CHECK(std::count(seen.begin(), seen.end(), true) == 100);

    auto again = split_holdout(fm, Task::regression, 0.2, 42);
    CHECK(again.train_indices == split.train_indices);
    CHECK(again.test_indices == split.test_indices);

    auto other = split_holdout(fm, Task::regression, 0.2, 43);
    CHECK(other.test_indices != split.test_indices);

    features::FeatureMatrix tiny = make_fm(9, 1, false);
    CHECK_THROWS_AS(split_holdout(tiny, Task::regression, 0.2, 1), TooFewRowsError);
}

TEST_CASE("stratified holdout keeps every class within one row of its share") {
    // class counts {5*:64, 4*:20, 3*:8, 2*:5, 1*:3}, fraction 0.25
    // stratified ideal per class: 16, 5, 2, 1.25, 0.75
    auto fm = make_fm(100, 2, true, {3, 5, 8, 20, 64});
    auto split = split_holdout(fm, Task::classification, 0.25, 7);
    std::map<int, std::size_t> test_counts;
    for (auto i : split.test_indices) ++test_counts[static_cast<int>(fm.y[i])];
    const std::map<int, double> ideal = {{1, 0.75}, {2, 1.25}, {3, 2.0}, {4, 5.0}, {5, 16.0}};
    for (const auto& [cls, want] : ideal) {
        CHECK(std::fabs(static_cast<double>(test_counts[cls]) - want) <= 1.0);
    }
}

TEST_CASE("rmse: identity, hand value, constant offset, symmetry, errors") {
    std::vector<double> a = {1, 2, 3, 4};
    CHECK(rmse(a, a) == 0.0);

    std::vector<double> pred = {0, 0}, actual = {3, 4};
    CHECK(rmse(pred, actual) == doctest::Approx(std::sqrt(25.0 / 2.0)).epsilon(1e-12));
    CHECK(rmse(pred, actual) == rmse(actual, pred));

    std::vector<double> shifted = {3.5, 4.5, 5.5, 6.5};
    CHECK(rmse(shifted, a) == doctest::Approx(2.5).epsilon(1e-12));

    std::vector<double> shorter = {1};
    CHECK_THROWS_AS(rmse(a, shorter), LengthMismatchError);
    std::vector<double> empty;
    CHECK_THROWS_AS(rmse(empty, empty), EmptyInputError);
}

TEST_CASE("rmse is invariant under joint permutation of pairs") {
    Rng rng(5);
    std::vector<double> pred(20), actual(20);
    for (std::size_t i = 0; i < 20; ++i) {
        pred[i] = rng.next_normal();
        actual[i] = rng.next_normal();
    }
    const double base = rmse(pred, actual);
    auto idx = iota_indices(20);
    shuffle(idx, rng);
    std::vector<double> p2(20), a2(20);
    for (std::size_t i = 0; i < 20; ++i) {
        p2[i] = pred[idx[i]];
        a2[i] = actual[idx[i]];
    }
    CHECK(rmse(p2, a2) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("accuracy is trace over total") {
    ConfusionMatrix diag;
    for (int c = 1; c <= 5; ++c)
        for (int i = 0; i < 4; ++i) diag.add(c, c);
    CHECK(accuracy(diag) == 1.0);

    ConfusionMatrix off;
    off.add(1, 2);
    off.add(2, 3);
    CHECK(accuracy(off) == 0.0);

    ConfusionMatrix paper;
    for (int i = 0; i < 729; ++i) paper.add(5, 5);
    for (int i = 0; i < 271; ++i) paper.add(4, 5);
    CHECK(paper.total() == 1000);
    CHECK(accuracy(paper) == doctest::Approx(0.729).epsilon(1e-12));

    ConfusionMatrix empty;
    CHECK_THROWS_AS(accuracy(empty), EmptyInputError);
}

TEST_CASE("no-information rate is the majority share") {
    std::vector<int> labels = {1, 1, 2, 3};
    CHECK(no_information_rate(labels) == 0.5);
    std::vector<int> same = {4, 4, 4};
    CHECK(no_information_rate(same) == 1.0);
    std::vector<int> empty;
    CHECK_THROWS_AS(no_information_rate(empty), EmptyInputError);

    std::vector<int> paper;
    paper.insert(paper.end(), 644, 5);
    paper.insert(paper.end(), 356, 4);
    CHECK(no_information_rate(paper) == 0.644);
}

TEST_CASE("binomial test matches the exact hand computation") {
    // n=10, k=9, p=0.5: P(X>=9) = (C(10,9)+C(10,10))/2^10 = 11/1024
    CHECK(binomial_test_accuracy_above_nir(9, 10, 0.5) ==
          doctest::Approx(11.0 / 1024.0).epsilon(1e-12));
    CHECK(binomial_test_accuracy_above_nir(0, 10, 0.5) == doctest::Approx(1.0));
    CHECK(binomial_test_accuracy_above_nir(10, 10, 1.0) == 1.0);
}

TEST_CASE("leave-one-out cross-validation matches the brute-force oracle") {
    // 5-row toy, knn k=1: each validation row is predicted by its nearest
    // other row; enumerate by hand
    features::FeatureMatrix fm;
    fm.feature_names = {"x0"};
    fm.x = Matrix(5, 1);
    const double xs[] = {0.0, 1.0, 2.0, 10.0, 11.0};
    const double ys[] = {1.0, 2.0, 3.0, 10.0, 12.0};
    for (std::size_t i = 0; i < 5; ++i) {
        fm.x(i, 0) = xs[i];
        fm.y.push_back(ys[i]);
    }
    auto spec = quick_spec(Algorithm::knn, Task::regression, {{"k", 1}});
    auto scores = cross_validate(spec, fm, 5, 90);

    // nearest other neighbors: 0->1, 1->0 or 2 (tie: lower index 0), 2->1,
    // 3->4, 4->3, so per-row absolute errors are |1-2|,|2-1|,|3-2|,|10-12|,|12-10|
    std::vector<double> expected_errors = {1.0, 1.0, 1.0, 2.0, 2.0};
    std::vector<double> got;
    for (double s : scores) got.push_back(s);
    std::sort(got.begin(), got.end());
    std::sort(expected_errors.begin(), expected_errors.end());
    for (std::size_t i = 0; i < 5; ++i) CHECK(got[i] == doctest::Approx(expected_errors[i]));
}

TEST_CASE("cross-validation: perfect-fit data gives zero RMSE folds") {
    features::FeatureMatrix fm;
    fm.feature_names = {"dup"};
    fm.x = Matrix(30, 1);
    Rng rng(8);
    for (std::size_t i = 0; i < 30; ++i) {
        fm.y.push_back(std::floor(rng.next_double(0.0, 4.0)));
        fm.x(i, 0) = fm.y[i];  // the target leaks in as a feature
    }
    auto spec = quick_spec(Algorithm::cart, Task::regression,
                           {{"min_samples_split", 2}, {"min_samples_leaf", 1}});
    for (double s : cross_validate(spec, fm, 5, 4)) CHECK(s == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cross-validation fold assignment is seed-stable and partitioning") {
    auto fm = make_fm(40, 10, false);
    auto spec = quick_spec(Algorithm::cart, Task::regression);
    auto a = cross_validate(spec, fm, 4, 77);
    auto b = cross_validate(spec, fm, 4, 77);
    CHECK(a == b);
    CHECK_THROWS_AS(cross_validate(spec, fm, 1, 1), InvalidHyperparamError);
    features::FeatureMatrix three = make_fm(3, 1, false);
    CHECK_THROWS_AS(cross_validate(spec, three, 4, 1), TooFewRowsError);
}

TEST_CASE("run_benchmark: single spec ranks first; ranking is a permutation") {
    auto fm = make_fm(60, 20, false);
    BenchProtocol protocol{0.25, 3, 5, true};
    auto single = run_benchmark({quick_spec(Algorithm::cart, Task::regression)}, fm, protocol);
    REQUIRE(single.entries.size() == 1);
    CHECK(single.entries[0].rank == 1);

    auto multi = run_benchmark({quick_spec(Algorithm::cart, Task::regression),
                                quick_spec(Algorithm::knn, Task::regression),
                                quick_spec(Algorithm::svm_linear, Task::regression)},
                               fm, protocol);
    std::vector<std::size_t> ranks;
    for (const auto& entry : multi.entries) ranks.push_back(entry.rank);
    std::sort(ranks.begin(), ranks.end());
    CHECK(ranks == std::vector<std::size_t>{1, 2, 3});
    CHECK_THROWS_AS(run_benchmark({}, fm, protocol), EmptyInputError);
}

TEST_CASE("majority-class-only models are flagged at exactly the NIR") {
    // constant features make every model predict the majority class
    features::FeatureMatrix fm;
    fm.feature_names = {"x0"};
    fm.x = Matrix(100, 1, 1.0);
    for (std::size_t i = 0; i < 100; ++i) fm.y.push_back(i < 70 ? 5.0 : 1.0);

    BenchProtocol protocol{0.2, 2, 9, false};
    auto result = run_benchmark({quick_spec(Algorithm::cart, Task::classification),
                                 quick_spec(Algorithm::knn, Task::classification)},
                                fm, protocol);
    for (const auto& entry : result.entries) {
        CHECK(entry.metric == doctest::Approx(result.nir).epsilon(1e-12));
        CHECK(entry.at_or_below_nir);
    }
}
