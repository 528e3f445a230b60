#include "star_sense/models/forest.hpp"

namespace starsense::models {

double CartModel::predict_value(std::span<const double> row) const {
    return tree().predict_value(row);
}

ClassScores CartModel::predict_dist(std::span<const double> row) const {
    ClassScores scores{};
    const TreeNode& leaf = tree().leaf_for(row);
    for (std::size_t k = 0; k < kNumClasses; ++k) scores[k] = leaf.class_dist[k];
    return scores;
}

double ForestModel::predict_value(std::span<const double> row) const {
    double sum = 0.0;
    for (const Tree& tree : forest) sum += tree.predict_value(row);  // fixed tree order
    return sum / static_cast<double>(forest.size());
}

ClassScores ForestModel::predict_dist(std::span<const double> row) const {
    ClassScores scores{};
    for (const Tree& tree : forest) {
        const TreeNode& leaf = tree.leaf_for(row);
        for (std::size_t k = 0; k < kNumClasses; ++k) scores[k] += leaf.class_dist[k];
    }
    for (double& s : scores) s /= static_cast<double>(forest.size());
    return scores;
}

}  // namespace starsense::models
