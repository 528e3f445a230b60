#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "star_sense/models/model.hpp"
#include "star_sense/xai/pdp.hpp"

namespace starsense::cli {

// Flat key/value config with [section] headers; keys are stored as
// "section.key". CLI flags override file values.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

struct RunConfig {
    // paths
    std::string input;
    std::string lexicon;
    std::string out_dir = "reports";
    // protocol
    double holdout = 0.2;
    std::size_t folds = 5;
    std::uint64_t seed = 42;
    // thresholds
    double sparse_threshold = 0.95;
    double leakage_threshold = 0.5;
    double importance_cutoff = 10.0;
    double flat_tol = 1e-6;
    // featurize
    std::string text_column = "reviews.text";
    std::string score_mode = "rate";
    // algorithms: names in run order plus per-algorithm hyperparams
    std::vector<std::string> algorithms = {"knn", "cart", "rf", "gbm", "xgb", "svm_linear", "svm_rbf"};
    std::map<std::string, std::map<std::string, double>> hyperparams;  // algo -> name -> value
    // study 2
    std::string explain_algorithm = "rf";
    std::size_t n_instances = 6;
    std::size_t importance_repeats = 5;
    std::size_t pdp_grid = 20;
    std::size_t background_cap = 1000;
    // expected signs for the mismatch detector
    xai::SignExpectation expected_signs;
    // execution
    int threads = 0;  // 0 = library default
    bool fixed_epoch = false;

    // Builds a ModelSpec for a named algorithm with this config's
    // hyperparams and seed.
    models::ModelSpec spec_for(const std::string& algorithm, models::Task task) const;
};

// Applies file values onto the defaults; validates ranges (ConfigError).
RunConfig config_from_map(const std::map<std::string, std::string>& values);

// Default expectation: positive emotions push ratings up, negative
// emotions down.
xai::SignExpectation default_expected_signs();

// signs.cfg format: `feature = positive|negative` lines, # comments.
xai::SignExpectation parse_signs_file(const std::string& path);

}  // namespace starsense::cli
