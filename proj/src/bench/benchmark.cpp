#include "star_sense/bench/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"

namespace starsense::bench {

using features::FeatureMatrix;
using models::ModelSpec;
using models::Task;

features::FeatureMatrix subset(const FeatureMatrix& fm, std::span<const std::size_t> rows) {
    FeatureMatrix out;
    out.feature_names = fm.feature_names;
    out.encoding_map = fm.encoding_map;
    out.x = Matrix(rows.size(), fm.n_cols());
    out.y.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto src = fm.x.row(rows[i]);
        auto dst = out.x.row(i);
        std::copy(src.begin(), src.end(), dst.begin());
        out.y[i] = fm.y[rows[i]];
    }
    return out;
}

Split split_holdout(const FeatureMatrix& fm, Task task, double fraction, std::uint64_t seed) {
    const std::size_t n = fm.n_rows();
    if (n < 10) throw TooFewRowsError("need at least 10 rows to split");
    if (fraction <= 0.0 || fraction >= 1.0) throw InvalidHyperparamError("holdout fraction must be in (0,1)");

    Split split;
    split.seed = seed;
    split.fraction = fraction;
    std::vector<bool> in_test(n, false);

    if (task == Task::classification) {
        std::map<int, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) {
            double v = fm.y[i];
            if (v != std::floor(v)) throw NonIntegerTargetError("classification target must be integer classes");
            by_class[static_cast<int>(v)].push_back(i);
        }
        for (auto& [label, rows] : by_class) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(label)));
            shuffle(rows, rng);
            std::size_t n_test = static_cast<std::size_t>(
                std::llround(fraction * static_cast<double>(rows.size())));
            n_test = std::min(n_test, rows.size());
            for (std::size_t i = 0; i < n_test; ++i) in_test[rows[i]] = true;
        }
    } else {
        auto rows = iota_indices(n);
        Rng rng(mix_seed(seed, 0x5eedULL));
        shuffle(rows, rng);
        std::size_t n_test = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
        n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
        for (std::size_t i = 0; i < n_test; ++i) in_test[rows[i]] = true;
    }

    for (std::size_t i = 0; i < n; ++i)
        (in_test[i] ? split.test_indices : split.train_indices).push_back(i);
    if (split.test_indices.empty() || split.train_indices.empty())
        throw TooFewRowsError("degenerate split: empty train or test partition");
    return split;
}

namespace {

double evaluate_metric(const models::TrainedModel& model, const FeatureMatrix& test) {
    if (model.spec().task == Task::regression) {
        std::vector<double> pred = model.predict(test.x);
        return rmse(pred, test.y);
    }
    std::vector<int> pred = model.predict_labels(test.x);
    std::vector<int> actual(test.y.size());
    for (std::size_t i = 0; i < test.y.size(); ++i) actual[i] = static_cast<int>(test.y[i]);
    return accuracy(ConfusionMatrix::from_labels(actual, pred));
}

std::vector<std::size_t> fold_assignment(const FeatureMatrix& fm, Task task, std::size_t folds,
                                         std::uint64_t seed) {
    const std::size_t n = fm.n_rows();
    std::vector<std::size_t> fold_of(n, 0);
    if (task == Task::classification) {
        std::map<int, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[static_cast<int>(fm.y[i])].push_back(i);
        for (auto& [label, rows] : by_class) {
            Rng rng(mix_seed(seed, 0xF01dULL, static_cast<std::uint64_t>(label)));
            shuffle(rows, rng);
            for (std::size_t i = 0; i < rows.size(); ++i) fold_of[rows[i]] = i % folds;
        }
    } else {
        auto rows = iota_indices(n);
        Rng rng(mix_seed(seed, 0xF01dULL));
        shuffle(rows, rng);
        for (std::size_t i = 0; i < n; ++i) fold_of[rows[i]] = i % folds;
    }
    return fold_of;
}

}  // namespace

std::vector<double> cross_validate(const ModelSpec& spec, const FeatureMatrix& fm, std::size_t folds,
                                   std::uint64_t seed) {
    const std::size_t n = fm.n_rows();
    if (folds < 2) throw InvalidHyperparamError("cross-validation needs k >= 2");
    if (n < folds) throw TooFewRowsError("fewer rows than folds");

    std::vector<std::size_t> fold_of = fold_assignment(fm, spec.task, folds, seed);
    std::vector<double> scores(folds, 0.0);
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<std::size_t> train_rows, val_rows;
        for (std::size_t i = 0; i < n; ++i)
            (fold_of[i] == f ? val_rows : train_rows).push_back(i);
        if (val_rows.empty() || train_rows.empty())
            throw TooFewRowsError("empty fold; reduce k");
        FeatureMatrix train_fm = subset(fm, train_rows);
        FeatureMatrix val_fm = subset(fm, val_rows);
        auto model = models::train(spec, train_fm);
        scores[f] = evaluate_metric(*model, val_fm);
    }
    return scores;
}

BenchmarkResult run_benchmark(const std::vector<ModelSpec>& specs, const FeatureMatrix& fm,
                              const BenchProtocol& protocol) {
    if (specs.empty()) throw EmptyInputError("no model specs to benchmark");
    const Task task = specs.front().task;
    for (const auto& spec : specs)
        if (spec.task != task) throw TaskMismatchError("all specs in one benchmark must share the task");

    BenchmarkResult result;
    result.task = task;

    Split split = split_holdout(fm, task, protocol.holdout_fraction, protocol.seed);
    FeatureMatrix train_fm = subset(fm, split.train_indices);
    FeatureMatrix test_fm = subset(fm, split.test_indices);
    result.n_train = train_fm.n_rows();
    result.n_test = test_fm.n_rows();

    std::vector<int> test_labels;
    if (task == Task::classification) {
        test_labels.resize(test_fm.y.size());
        for (std::size_t i = 0; i < test_fm.y.size(); ++i) test_labels[i] = static_cast<int>(test_fm.y[i]);
        result.nir = no_information_rate(test_labels);
    }

    for (const auto& spec : specs) {
        BenchEntry entry;
        entry.spec = spec;
        entry.name = to_string(spec.algorithm);

        const auto start = std::chrono::steady_clock::now();
        auto model = models::train(spec, train_fm);
        if (task == Task::regression) {
            std::vector<double> pred = model->predict(test_fm.x);
            entry.metric = rmse(pred, test_fm.y);
        } else {
            std::vector<int> pred = model->predict_labels(test_fm.x);
            entry.confusion = ConfusionMatrix::from_labels(test_labels, pred);
            entry.metric = accuracy(entry.confusion);
            entry.at_or_below_nir = entry.metric <= result.nir;
            entry.p_value_vs_nir =
                binomial_test_accuracy_above_nir(entry.confusion.trace(), entry.confusion.total(), result.nir);
        }
        entry.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        if (protocol.run_cv && protocol.cv_folds >= 2 && train_fm.n_rows() >= protocol.cv_folds) {
            entry.fold_scores = cross_validate(spec, train_fm, protocol.cv_folds, protocol.seed);
            double mean = 0.0;
            for (double s : entry.fold_scores) mean += s;
            mean /= static_cast<double>(entry.fold_scores.size());
            double var = 0.0;
            for (double s : entry.fold_scores) var += (s - mean) * (s - mean);
            entry.cv_mean = mean;
            entry.cv_sd = entry.fold_scores.size() > 1
                              ? std::sqrt(var / static_cast<double>(entry.fold_scores.size() - 1))
                              : 0.0;
        }
        result.entries.push_back(std::move(entry));
    }

    // rank: 1 = best (lowest RMSE / highest accuracy); ties keep list order
    std::vector<std::size_t> order(result.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (task == Task::regression) return result.entries[a].metric < result.entries[b].metric;
        return result.entries[a].metric > result.entries[b].metric;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) result.entries[order[pos]].rank = pos + 1;
    return result;
}

}  // namespace starsense::bench
