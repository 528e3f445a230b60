#pragma once

#include "star_sense/models/model.hpp"
#include "star_sense/models/scaler.hpp"

namespace starsense::models {

// Linear model trained by stochastic subgradient descent (Pegasos-style):
// hinge loss one-vs-rest for classification, epsilon-insensitive loss for
// regression. The rbf variant first maps standardized inputs through D
// random Fourier features approximating exp(-gamma * ||x - y||^2).
class SvmModel final : public TrainedModel {
public:
    SvmModel(ModelSpec spec, std::vector<std::string> feature_names)
        : TrainedModel(std::move(spec), std::move(feature_names)) {}

    Scaler scaler;
    bool use_rff = false;
    Matrix rff_weights;              // D x p projection
    std::vector<double> rff_offsets; // D phases in [0, 2*pi)
    std::vector<int> class_labels;   // present classes; empty for regression
    Matrix weights;                  // one row per class (classification) or one row (regression)
    double y_mean = 0.0;             // regression target centering

    std::vector<double> featurize(std::span<const double> row) const;  // standardize (+ rff) + bias term

protected:
    double predict_value(std::span<const double> row) const override;
    ClassScores predict_dist(std::span<const double> row) const override;
};

}  // namespace starsense::models
