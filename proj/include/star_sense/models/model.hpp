#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/features/feature_matrix.hpp"
#include "star_sense/models/tree.hpp"

namespace starsense::models {

enum class Algorithm { knn, cart, random_forest, gbm, xgb_tree, svm_linear, svm_rbf_approx };
enum class Task { regression, classification };

std::string to_string(Algorithm algorithm);
std::string to_string(Task task);
Algorithm algorithm_from_string(const std::string& name);  // accepts "rf", "xgb", ... aliases
Task task_from_string(const std::string& name);

struct ModelSpec {
    Algorithm algorithm = Algorithm::random_forest;
    Task task = Task::regression;
    std::map<std::string, double> hyperparams;
    std::uint64_t seed = 0;

    double param(const std::string& name, double fallback) const {
        auto it = hyperparams.find(name);
        return it == hyperparams.end() ? fallback : it->second;
    }
};

// Raises InvalidHyperparamError on out-of-range values or unknown keys.
void validate_spec(const ModelSpec& spec);

// The minimal predict contract every explanation method works against: a
// per-row numeric prediction (regression value, or predicted class label for
// classifiers). Batch predict parallelizes over rows and is bit-identical
// for any thread count.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual std::size_t feature_count() const = 0;
    virtual double predict_row(std::span<const double> row) const = 0;

    std::vector<double> predict(const Matrix& rows) const;
};

using ClassScores = std::array<double, kNumClasses>;

class TrainedModel : public Predictor {
public:
    TrainedModel(ModelSpec spec, std::vector<std::string> feature_names)
        : spec_(std::move(spec)), feature_names_(std::move(feature_names)) {}

    const ModelSpec& spec() const { return spec_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }
    std::size_t feature_count() const override { return feature_names_.size(); }

    double predict_row(std::span<const double> row) const final;

    // classification only; rows sum to 1, absent classes are exactly 0
    Matrix predict_proba(const Matrix& rows) const;
    std::vector<int> predict_labels(const Matrix& rows) const;  // labels 1..5

    // per-row class probabilities; TaskMismatchError for regression models
    ClassScores class_scores_row(std::span<const double> row) const;

    // tree ensemble view for impurity importance; nullptr for non-tree models
    virtual const std::vector<Tree>* trees() const { return nullptr; }

protected:
    virtual double predict_value(std::span<const double> row) const = 0;      // regression
    virtual ClassScores predict_dist(std::span<const double> row) const;      // classification

private:
    ModelSpec spec_;
    std::vector<std::string> feature_names_;
};

// Trains the requested algorithm; deterministic given
// (spec.seed, data).
std::unique_ptr<TrainedModel> train(const ModelSpec& spec, const features::FeatureMatrix& fm);

// Distinct class labels (ascending) present in an integer-valued target.
std::vector<int> present_classes(std::span<const double> y);

}  // namespace starsense::models
