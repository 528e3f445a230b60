#pragma once

#include "star_sense/models/model.hpp"

namespace starsense::models {

// Single CART tree.
class CartModel final : public TrainedModel {
public:
    CartModel(ModelSpec spec, std::vector<std::string> feature_names)
        : TrainedModel(std::move(spec), std::move(feature_names)) {}

    std::vector<Tree> forest;  // exactly one tree

    const Tree& tree() const { return forest.front(); }
    const std::vector<Tree>* trees() const override { return &forest; }

protected:
    double predict_value(std::span<const double> row) const override;
    ClassScores predict_dist(std::span<const double> row) const override;
};

// Bagged CART trees; regression predicts the mean over trees, classification
// averages per-tree leaf class distributions.
class ForestModel final : public TrainedModel {
public:
    ForestModel(ModelSpec spec, std::vector<std::string> feature_names)
        : TrainedModel(std::move(spec), std::move(feature_names)) {}

    std::vector<Tree> forest;

    std::size_t tree_count() const { return forest.size(); }
    double tree_predict_value(std::size_t t, std::span<const double> row) const {
        return forest[t].predict_value(row);
    }
    const std::vector<Tree>* trees() const override { return &forest; }

protected:
    double predict_value(std::span<const double> row) const override;
    ClassScores predict_dist(std::span<const double> row) const override;
};

}  // namespace starsense::models
