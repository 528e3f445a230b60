#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "star_sense/bench/metrics.hpp"
#include "star_sense/features/feature_matrix.hpp"
#include "star_sense/models/model.hpp"

namespace starsense::bench {

struct Split {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::uint64_t seed = 0;
    double fraction = 0.2;
};

// Deterministic hold-out split; stratified by class for classification so
// each class's share in the test set stays within one row of its overall
// share. TooFewRowsError below 10 rows.
Split split_holdout(const features::FeatureMatrix& fm, models::Task task, double fraction,
                    std::uint64_t seed);

features::FeatureMatrix subset(const features::FeatureMatrix& fm, std::span<const std::size_t> rows);

// k-fold cross-validation; every row lands in exactly one validation fold.
// Returns the per-fold metric (RMSE or accuracy by task).
std::vector<double> cross_validate(const models::ModelSpec& spec, const features::FeatureMatrix& fm,
                                   std::size_t folds, std::uint64_t seed);

struct BenchProtocol {
    double holdout_fraction = 0.2;
    std::size_t cv_folds = 5;
    std::uint64_t seed = 42;
    bool run_cv = true;
};

struct BenchEntry {
    models::ModelSpec spec;
    std::string name;
    double metric = 0.0;       // hold-out RMSE or accuracy
    double cv_mean = 0.0;
    double cv_sd = 0.0;
    std::vector<double> fold_scores;
    double wall_seconds = 0.0;
    std::size_t rank = 0;      // 1 = best
    // classification extras
    ConfusionMatrix confusion;
    bool at_or_below_nir = false;
    double p_value_vs_nir = 1.0;
};

struct BenchmarkResult {
    models::Task task;
    std::vector<BenchEntry> entries;  // spec-list order
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    double nir = 0.0;  // classification only
};

// Trains every spec on the hold-out split, gathers the task metric, CV
// dispersion and (for classification) NIR diagnostics. Entries stay in
// spec-list order; rank annotates the quality ordering.
BenchmarkResult run_benchmark(const std::vector<models::ModelSpec>& specs,
                              const features::FeatureMatrix& fm, const BenchProtocol& protocol);

}  // namespace starsense::bench
