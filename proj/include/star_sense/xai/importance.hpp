#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/models/model.hpp"

namespace starsense::xai {

enum class ImportanceMethod { permutation, impurity };
enum class LossMetric { rmse, error_rate };

struct FeatureImportance {
    std::string feature;
    double raw = 0.0;         // permutation: mean loss increase; impurity: summed split gain
    double normalized = 0.0;  // max = 100; negative raw floors at 0
};

struct ImportanceReport {
    ImportanceMethod method = ImportanceMethod::permutation;
    LossMetric metric = LossMetric::rmse;
    double baseline = 0.0;  // permutation only
    std::vector<FeatureImportance> entries;  // feature order of the matrix
};

// score_j = mean over repeats of (loss after shuffling column j - baseline
// loss). Shuffles are seeded per (feature, repeat), so results are
// reproducible for any thread count.
ImportanceReport permutation_importance(const models::Predictor& model, const Matrix& x,
                                        std::span<const double> y,
                                        const std::vector<std::string>& feature_names,
                                        LossMetric metric, std::size_t repeats, std::uint64_t seed);

// Split gains summed per feature over all trees. UnsupportedModelError for
// models without a tree ensemble.
ImportanceReport impurity_importance(const models::TrainedModel& model);

struct ThresholdFilterResult {
    std::vector<std::string> kept;
    bool all_zero = false;  // nothing scored; warning for the caller
};

// Keeps features whose normalized score is >= cutoff (default 10 on the
// max-100 scale).
ThresholdFilterResult importance_threshold_filter(const ImportanceReport& report, double cutoff = 10.0);

}  // namespace starsense::xai
