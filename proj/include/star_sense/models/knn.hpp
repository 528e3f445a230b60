#pragma once

#include "star_sense/models/model.hpp"
#include "star_sense/models/scaler.hpp"

namespace starsense::models {

// k-nearest neighbors over the z-scored training set. Distance ties include
// the lower training-row index; label ties go to the lower star class.
class KnnModel final : public TrainedModel {
public:
    KnnModel(ModelSpec spec, std::vector<std::string> feature_names)
        : TrainedModel(std::move(spec), std::move(feature_names)) {}

    std::size_t k = 5;
    Scaler scaler;
    Matrix train_x;               // standardized
    std::vector<double> train_y;

protected:
    double predict_value(std::span<const double> row) const override;
    ClassScores predict_dist(std::span<const double> row) const override;

private:
    // indices of the k nearest training rows, ordered by (distance, index)
    std::vector<std::size_t> neighbors(std::span<const double> row) const;
};

}  // namespace starsense::models
