#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/models/model.hpp"

namespace starsense::xai {

enum class BreakDownOrder { by_descending_impact, fixed };

struct Contribution {
    std::string feature;
    double value = 0.0;  // the instance's feature value (mean over instances in aggregates)
    double delta = 0.0;  // prediction shift when this feature is fixed
};

// One instance's decomposition: intercept + sum(deltas) = final_prediction.
struct BreakDownResult {
    double intercept = 0.0;
    std::vector<Contribution> contributions;  // in conditioning order
    double final_prediction = 0.0;
};

struct AttributionReport {
    BreakDownOrder order = BreakDownOrder::by_descending_impact;
    std::size_t n_instances = 0;
    double intercept = 0.0;
    std::vector<BreakDownResult> per_instance;
    // mean-over-instances aggregation (feature-keyed, ordered by |mean delta|
    // descending); additivity holds: intercept + sum = mean_final
    std::vector<Contribution> mean_contributions;
    double mean_final = 0.0;
};

struct BreakDownOptions {
    BreakDownOrder order = BreakDownOrder::by_descending_impact;
    std::optional<std::vector<std::size_t>> fixed_order;  // feature indices, used when order == fixed
    std::size_t background_cap = 1000;
    std::uint64_t seed = 0;  // for background subsampling beyond the cap
};

// Sequential conditioning over the background sample: the intercept is the
// mean background prediction; fixing features one at a time to the
// instance's values moves that mean, and each move is the feature's delta.
AttributionReport break_down(const models::Predictor& model, const Matrix& instances,
                             const Matrix& background, const std::vector<std::string>& feature_names,
                             const BreakDownOptions& options = {});

// Collapses contributions past the top `keep` into one "all other factors"
// entry; the delta sum (and so additivity) is preserved.
std::vector<Contribution> group_tail_contributions(const std::vector<Contribution>& contributions,
                                                   std::size_t keep);

}  // namespace starsense::xai
