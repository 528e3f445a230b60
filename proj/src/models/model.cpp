#include "star_sense/models/model.hpp"

#include <algorithm>
#include <cmath>

#include "star_sense/core/error.hpp"

namespace starsense::models {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::knn: return "knn";
        case Algorithm::cart: return "cart";
        case Algorithm::random_forest: return "rf";
        case Algorithm::gbm: return "gbm";
        case Algorithm::xgb_tree: return "xgb";
        case Algorithm::svm_linear: return "svm_linear";
        case Algorithm::svm_rbf_approx: return "svm_rbf";
    }
    return "?";
}

std::string to_string(Task task) { return task == Task::regression ? "regression" : "classification"; }

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "knn") return Algorithm::knn;
    if (name == "cart" || name == "rpart") return Algorithm::cart;
    if (name == "rf" || name == "random_forest") return Algorithm::random_forest;
    if (name == "gbm") return Algorithm::gbm;
    if (name == "xgb" || name == "xgb_tree" || name == "xgboost") return Algorithm::xgb_tree;
    if (name == "svm_linear") return Algorithm::svm_linear;
    if (name == "svm_rbf" || name == "svm_rbf_approx" || name == "svm_radial") return Algorithm::svm_rbf_approx;
    throw InvalidHyperparamError("unknown algorithm: " + name);
}

Task task_from_string(const std::string& name) {
    if (name == "regression") return Task::regression;
    if (name == "classification") return Task::classification;
    throw InvalidHyperparamError("unknown task: " + name);
}

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidHyperparamError(message);
}

void check_keys(const ModelSpec& spec, const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : spec.hyperparams) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw InvalidHyperparamError("unknown hyperparameter \"" + key + "\" for " +
                                         to_string(spec.algorithm));
    }
}

}  // namespace

void validate_spec(const ModelSpec& spec) {
    switch (spec.algorithm) {
        case Algorithm::knn:
            check_keys(spec, {"k"});
            require(spec.param("k", 5) >= 1, "knn.k must be >= 1");
            break;
        case Algorithm::cart:
            check_keys(spec, {"max_depth", "min_samples_split", "min_samples_leaf"});
            require(spec.param("max_depth", 30) >= 1, "cart.max_depth must be >= 1");
            require(spec.param("min_samples_split", 20) >= 2, "cart.min_samples_split must be >= 2");
            require(spec.param("min_samples_leaf", 7) >= 1, "cart.min_samples_leaf must be >= 1");
            break;
        case Algorithm::random_forest:
            check_keys(spec, {"n_trees", "mtry", "max_depth", "min_samples_split", "min_samples_leaf",
                              "bootstrap"});
            require(spec.param("n_trees", 500) >= 1, "rf.n_trees must be >= 1");
            require(spec.param("max_depth", 30) >= 1, "rf.max_depth must be >= 1");
            break;
        case Algorithm::gbm:
            check_keys(spec, {"n_trees", "learning_rate", "max_depth", "min_samples_split",
                              "min_samples_leaf"});
            require(spec.param("n_trees", 100) >= 1, "gbm.n_trees must be >= 1");
            {
                double lr = spec.param("learning_rate", 0.1);
                require(lr > 0.0 && lr <= 1.0, "gbm.learning_rate must be in (0, 1]");
            }
            require(spec.param("max_depth", 3) >= 1, "gbm.max_depth must be >= 1");
            break;
        case Algorithm::xgb_tree:
            check_keys(spec, {"n_rounds", "eta", "lambda", "gamma", "max_depth", "min_child_weight"});
            require(spec.param("n_rounds", 100) >= 1, "xgb.n_rounds must be >= 1");
            {
                double eta = spec.param("eta", 0.3);
                require(eta > 0.0 && eta <= 1.0, "xgb.eta must be in (0, 1]");
            }
            require(spec.param("lambda", 1.0) >= 0.0, "xgb.lambda must be >= 0");
            require(spec.param("gamma", 0.0) >= 0.0, "xgb.gamma must be >= 0");
            require(spec.param("max_depth", 6) >= 1, "xgb.max_depth must be >= 1");
            break;
        case Algorithm::svm_linear:
        case Algorithm::svm_rbf_approx:
            check_keys(spec, {"epochs", "reg_lambda", "epsilon", "rff_dim", "gamma"});
            require(spec.param("epochs", 40) >= 1, "svm.epochs must be >= 1");
            require(spec.param("reg_lambda", 1e-4) > 0.0, "svm.reg_lambda must be > 0");
            require(spec.param("epsilon", 0.1) >= 0.0, "svm.epsilon must be >= 0");
            require(spec.param("rff_dim", 200) >= 1, "svm.rff_dim must be >= 1");
            require(spec.param("gamma", 0.0) >= 0.0, "svm.gamma must be >= 0");
            break;
    }
}

std::vector<double> Predictor::predict(const Matrix& rows) const {
    if (rows.rows() > 0 && rows.cols() != feature_count())
        throw DimensionMismatchError("expected " + std::to_string(feature_count()) + " features, got " +
                                     std::to_string(rows.cols()));
    std::vector<double> out(rows.rows());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(rows.rows()); ++i)
        out[static_cast<std::size_t>(i)] = predict_row(rows.row(static_cast<std::size_t>(i)));
    return out;
}

double TrainedModel::predict_row(std::span<const double> row) const {
    if (row.size() != feature_count())
        throw DimensionMismatchError("expected " + std::to_string(feature_count()) + " features, got " +
                                     std::to_string(row.size()));
    if (spec_.task == Task::regression) return predict_value(row);
    ClassScores scores = predict_dist(row);
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k)
        if (scores[k] > scores[best]) best = k;  // ties keep the lower star class
    return static_cast<double>(best + 1);
}

ClassScores TrainedModel::predict_dist(std::span<const double>) const {
    throw TaskMismatchError("class probabilities are only defined for classification models");
}

ClassScores TrainedModel::class_scores_row(std::span<const double> row) const {
    if (spec_.task != Task::classification)
        throw TaskMismatchError("class probabilities are only defined for classification models");
    if (row.size() != feature_count())
        throw DimensionMismatchError("expected " + std::to_string(feature_count()) + " features, got " +
                                     std::to_string(row.size()));
    return predict_dist(row);
}

Matrix TrainedModel::predict_proba(const Matrix& rows) const {
    if (spec_.task != Task::classification)
        throw TaskMismatchError("predict_proba requires a classification model");
    if (rows.rows() > 0 && rows.cols() != feature_count())
        throw DimensionMismatchError("expected " + std::to_string(feature_count()) + " features, got " +
                                     std::to_string(rows.cols()));
    Matrix out(rows.rows(), kNumClasses);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(rows.rows()); ++i) {
        ClassScores scores = predict_dist(rows.row(static_cast<std::size_t>(i)));
        for (std::size_t k = 0; k < kNumClasses; ++k) out(static_cast<std::size_t>(i), k) = scores[k];
    }
    return out;
}

std::vector<int> TrainedModel::predict_labels(const Matrix& rows) const {
    if (spec_.task != Task::classification)
        throw TaskMismatchError("predict_labels requires a classification model");
    std::vector<double> raw = predict(rows);
    std::vector<int> labels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) labels[i] = static_cast<int>(raw[i]);
    return labels;
}

std::vector<int> present_classes(std::span<const double> y) {
    std::vector<int> classes;
    for (double v : y) {
        if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(kNumClasses))
            throw NonIntegerTargetError("classification target must contain integer classes 1..5, got " +
                                        std::to_string(v));
        int label = static_cast<int>(v);
        if (std::find(classes.begin(), classes.end(), label) == classes.end()) classes.push_back(label);
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

}  // namespace starsense::models
