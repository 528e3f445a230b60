#pragma once

#include "star_sense/models/model.hpp"

namespace starsense::models {

// Shared shape of the two boosting models: a flat tree list laid out
// round-major (round r, class k at index r * n_model_classes + k); regression
// uses one class slot. Scores start from base_score and accumulate
// learning_rate * leaf weight.
class BoostedModel : public TrainedModel {
public:
    BoostedModel(ModelSpec spec, std::vector<std::string> feature_names)
        : TrainedModel(std::move(spec), std::move(feature_names)) {}

    std::vector<Tree> forest;
    std::vector<int> class_labels;  // present classes (ascending); empty for regression
    double base_score = 0.0;
    double learning_rate = 0.1;

    const std::vector<Tree>* trees() const override { return &forest; }

    std::size_t rounds() const {
        std::size_t k = class_labels.empty() ? 1 : class_labels.size();
        return forest.size() / k;
    }

protected:
    double predict_value(std::span<const double> row) const override;
    ClassScores predict_dist(std::span<const double> row) const override;

    // raw additive scores per present class
    std::vector<double> class_margins(std::span<const double> row) const;
};

// Stagewise gradient boosting: squared-error trees with mean-residual leaves
// (regression) or softmax multinomial with Newton leaf refits
// (classification).
class GbmModel final : public BoostedModel {
public:
    using BoostedModel::BoostedModel;
    std::vector<double> staged_train_loss;  // training RMSE (or deviance) per round
};

// Second-order boosting with L2-regularized leaf weights.
class XgbModel final : public BoostedModel {
public:
    using BoostedModel::BoostedModel;
};

}  // namespace starsense::models
