#include "star_sense/models/boosting.hpp"

#include <cmath>

namespace starsense::models {

std::vector<double> BoostedModel::class_margins(std::span<const double> row) const {
    const std::size_t n_class = class_labels.size();
    std::vector<double> margins(n_class, base_score);
    const std::size_t rounds_count = rounds();
    for (std::size_t r = 0; r < rounds_count; ++r)
        for (std::size_t k = 0; k < n_class; ++k)
            margins[k] += learning_rate * forest[r * n_class + k].predict_value(row);
    return margins;
}

double BoostedModel::predict_value(std::span<const double> row) const {
    double score = base_score;
    for (const Tree& tree : forest) score += learning_rate * tree.predict_value(row);
    return score;
}

ClassScores BoostedModel::predict_dist(std::span<const double> row) const {
    ClassScores scores{};
    std::vector<double> margins = class_margins(row);
    double max_margin = margins[0];
    for (double m : margins) max_margin = std::max(max_margin, m);
    double denom = 0.0;
    for (double& m : margins) {
        m = std::exp(m - max_margin);
        denom += m;
    }
    for (std::size_t k = 0; k < margins.size(); ++k)
        scores[static_cast<std::size_t>(class_labels[k]) - 1] = margins[k] / denom;
    return scores;
}

}  // namespace starsense::models
