#include <algorithm>
#include <cmath>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/models/boosting.hpp"
#include "star_sense/models/forest.hpp"
#include "star_sense/models/knn.hpp"
#include "star_sense/models/model.hpp"
#include "star_sense/models/svm.hpp"

namespace starsense::models {

namespace {

using features::FeatureMatrix;

void check_inputs(const ModelSpec& spec, const FeatureMatrix& fm) {
    validate_spec(spec);
    if (fm.n_rows() == 0 || fm.n_cols() == 0) throw EmptyDataError("training data is empty");
    for (double v : fm.x.data())
        if (!std::isfinite(v)) throw NonFiniteValueError("feature matrix contains non-finite values");
    for (double v : fm.y)
        if (!std::isfinite(v)) throw NonFiniteValueError("target contains non-finite values");
}

std::vector<std::size_t> bootstrap_sample(std::size_t n, Rng& rng) {
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<std::size_t>(rng.next_index(n));
    return rows;
}

std::unique_ptr<TrainedModel> train_knn(const ModelSpec& spec, const FeatureMatrix& fm) {
    auto model = std::make_unique<KnnModel>(spec, fm.feature_names);
    model->k = static_cast<std::size_t>(spec.param("k", 5));
    model->scaler.fit(fm.x);
    model->train_x = model->scaler.transform(fm.x);
    model->train_y = fm.y;
    return model;
}

std::unique_ptr<TrainedModel> train_cart(const ModelSpec& spec, const FeatureMatrix& fm) {
    auto model = std::make_unique<CartModel>(spec, fm.feature_names);
    CartParams params;
    params.classification = spec.task == Task::classification;
    params.max_depth = static_cast<int>(spec.param("max_depth", 30));
    params.min_samples_split = static_cast<std::size_t>(spec.param("min_samples_split", 20));
    params.min_samples_leaf = static_cast<std::size_t>(spec.param("min_samples_leaf", 7));
    Rng rng(mix_seed(spec.seed, 0));
    auto rows = iota_indices(fm.n_rows());
    model->forest.push_back(grow_cart(fm.x, fm.y, rows, params, rng));
    return model;
}

std::unique_ptr<TrainedModel> train_forest(const ModelSpec& spec, const FeatureMatrix& fm) {
    auto model = std::make_unique<ForestModel>(spec, fm.feature_names);
    const bool classification = spec.task == Task::classification;
    const std::size_t p = fm.n_cols();
    const std::size_t default_mtry = classification
        ? static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))))
        : static_cast<std::size_t>(std::ceil(static_cast<double>(p) / 3.0));

    CartParams params;
    params.classification = classification;
    params.max_depth = static_cast<int>(spec.param("max_depth", 30));
    params.min_samples_split = static_cast<std::size_t>(
        spec.param("min_samples_split", classification ? 2 : 10));
    params.min_samples_leaf = static_cast<std::size_t>(
        spec.param("min_samples_leaf", classification ? 1 : 5));
    params.mtry = static_cast<std::size_t>(spec.param("mtry", static_cast<double>(default_mtry)));

    const std::size_t n_trees = static_cast<std::size_t>(spec.param("n_trees", 500));
    const bool bootstrap = spec.param("bootstrap", 1.0) != 0.0;
    const std::size_t n = fm.n_rows();

    model->forest.resize(n_trees);
    // per-tree seeds derive from spec.seed, so the forest is identical for
    // any thread count or schedule
#pragma omp parallel for schedule(dynamic)
    for (long long t = 0; t < static_cast<long long>(n_trees); ++t) {
        Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> rows = bootstrap ? bootstrap_sample(n, rng) : iota_indices(n);
        model->forest[static_cast<std::size_t>(t)] = grow_cart(fm.x, fm.y, rows, params, rng);
    }
    return model;
}

void softmax_rows(std::vector<std::vector<double>>& probs,
                  const std::vector<std::vector<double>>& scores) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
        double max_s = scores[i][0];
        for (double s : scores[i]) max_s = std::max(max_s, s);
        double denom = 0.0;
        for (std::size_t k = 0; k < scores[i].size(); ++k) {
            probs[i][k] = std::exp(scores[i][k] - max_s);
            denom += probs[i][k];
        }
        for (double& v : probs[i]) v /= denom;
    }
}

std::unique_ptr<TrainedModel> train_gbm(const ModelSpec& spec, const FeatureMatrix& fm) {
    auto model = std::make_unique<GbmModel>(spec, fm.feature_names);
    const std::size_t n = fm.n_rows();
    const std::size_t n_trees = static_cast<std::size_t>(spec.param("n_trees", 100));
    const double lr = spec.param("learning_rate", 0.1);
    model->learning_rate = lr;

    CartParams params;
    params.classification = false;  // boosting trees always fit real-valued residuals
    params.max_depth = static_cast<int>(spec.param("max_depth", 3));
    params.min_samples_split = static_cast<std::size_t>(spec.param("min_samples_split", 10));
    params.min_samples_leaf = static_cast<std::size_t>(spec.param("min_samples_leaf", 5));

    auto rows = iota_indices(n);
    Rng rng(mix_seed(spec.seed, 0));

    if (spec.task == Task::regression) {
        double mean = 0.0;
        for (double v : fm.y) mean += v;
        mean /= static_cast<double>(n);
        model->base_score = mean;

        std::vector<double> score(n, mean), residual(n);
        for (std::size_t m = 0; m < n_trees; ++m) {
            for (std::size_t i = 0; i < n; ++i) residual[i] = fm.y[i] - score[i];
            Tree tree = grow_cart(fm.x, residual, rows, params, rng);
            auto leaves = assign_leaves(tree, fm.x, rows);
            for (std::size_t i = 0; i < n; ++i) score[i] += lr * tree.nodes[leaves[i]].value;
            double sse = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double e = fm.y[i] - score[i];
                sse += e * e;
            }
            model->staged_train_loss.push_back(std::sqrt(sse / static_cast<double>(n)));
            model->forest.push_back(std::move(tree));
        }
        return model;
    }

    // softmax multinomial boosting with Newton leaf refits
    model->class_labels = present_classes(fm.y);
    if (model->class_labels.size() < 2)
        throw SingleClassDataError("classification needs at least two classes");
    const std::size_t n_class = model->class_labels.size();
    const double k_factor = static_cast<double>(n_class - 1) / static_cast<double>(n_class);

    std::vector<std::vector<double>> score(n, std::vector<double>(n_class, 0.0));
    std::vector<std::vector<double>> prob(n, std::vector<double>(n_class, 0.0));
    std::vector<std::vector<double>> indicator(n, std::vector<double>(n_class, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(model->class_labels.begin(), model->class_labels.end(),
                            static_cast<int>(fm.y[i]));
        indicator[i][static_cast<std::size_t>(it - model->class_labels.begin())] = 1.0;
    }

    std::vector<double> residual(n);
    for (std::size_t m = 0; m < n_trees; ++m) {
        softmax_rows(prob, score);
        double deviance = 0.0;
        for (std::size_t k = 0; k < n_class; ++k) {
            for (std::size_t i = 0; i < n; ++i) residual[i] = indicator[i][k] - prob[i][k];
            Tree tree = grow_cart(fm.x, residual, rows, params, rng);
            auto leaves = assign_leaves(tree, fm.x, rows);

            // Newton step per leaf: (K-1)/K * sum(residual) / sum(p*(1-p))
            std::vector<double> num(tree.nodes.size(), 0.0), den(tree.nodes.size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                num[leaves[i]] += residual[i];
                den[leaves[i]] += prob[i][k] * (1.0 - prob[i][k]);
            }
            for (std::size_t node = 0; node < tree.nodes.size(); ++node) {
                if (tree.nodes[node].feature >= 0) continue;
                tree.nodes[node].value = den[node] < 1e-12 ? 0.0 : k_factor * num[node] / den[node];
            }
            for (std::size_t i = 0; i < n; ++i) score[i][k] += lr * tree.nodes[leaves[i]].value;
            model->forest.push_back(std::move(tree));
        }
        softmax_rows(prob, score);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n_class; ++k)
                if (indicator[i][k] == 1.0) deviance -= std::log(std::max(prob[i][k], 1e-300));
        model->staged_train_loss.push_back(deviance / static_cast<double>(n));
    }
    return model;
}

std::unique_ptr<TrainedModel> train_xgb(const ModelSpec& spec, const FeatureMatrix& fm) {
    auto model = std::make_unique<XgbModel>(spec, fm.feature_names);
    const std::size_t n = fm.n_rows();
    const std::size_t n_rounds = static_cast<std::size_t>(spec.param("n_rounds", 100));
    const double eta = spec.param("eta", 0.3);
    model->learning_rate = eta;

    XgbParams params;
    params.max_depth = static_cast<int>(spec.param("max_depth", 6));
    params.lambda = spec.param("lambda", 1.0);
    params.gamma = spec.param("gamma", 0.0);
    params.min_child_weight = spec.param("min_child_weight", 1.0);

    auto rows = iota_indices(n);

    if (spec.task == Task::regression) {
        double mean = 0.0;
        for (double v : fm.y) mean += v;
        mean /= static_cast<double>(n);
        model->base_score = mean;

        std::vector<double> score(n, mean), grad(n), hess(n, 1.0);
        for (std::size_t m = 0; m < n_rounds; ++m) {
            for (std::size_t i = 0; i < n; ++i) grad[i] = score[i] - fm.y[i];
            Tree tree = grow_xgb(fm.x, grad, hess, rows, params);
            auto leaves = assign_leaves(tree, fm.x, rows);
            for (std::size_t i = 0; i < n; ++i) score[i] += eta * tree.nodes[leaves[i]].value;
            model->forest.push_back(std::move(tree));
        }
        return model;
    }

    model->class_labels = present_classes(fm.y);
    if (model->class_labels.size() < 2)
        throw SingleClassDataError("classification needs at least two classes");
    const std::size_t n_class = model->class_labels.size();

    std::vector<std::vector<double>> score(n, std::vector<double>(n_class, 0.0));
    std::vector<std::vector<double>> prob(n, std::vector<double>(n_class, 0.0));
    std::vector<std::vector<double>> indicator(n, std::vector<double>(n_class, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(model->class_labels.begin(), model->class_labels.end(),
                            static_cast<int>(fm.y[i]));
        indicator[i][static_cast<std::size_t>(it - model->class_labels.begin())] = 1.0;
    }

    std::vector<double> grad(n), hess(n);
    for (std::size_t m = 0; m < n_rounds; ++m) {
        softmax_rows(prob, score);
        for (std::size_t k = 0; k < n_class; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                grad[i] = prob[i][k] - indicator[i][k];
                hess[i] = std::max(prob[i][k] * (1.0 - prob[i][k]), 1e-16);
            }
            Tree tree = grow_xgb(fm.x, grad, hess, rows, params);
            auto leaves = assign_leaves(tree, fm.x, rows);
            for (std::size_t i = 0; i < n; ++i) score[i][k] += eta * tree.nodes[leaves[i]].value;
            model->forest.push_back(std::move(tree));
        }
    }
    return model;
}

std::unique_ptr<TrainedModel> train_svm(const ModelSpec& spec, const FeatureMatrix& fm) {
    auto model = std::make_unique<SvmModel>(spec, fm.feature_names);
    const std::size_t n = fm.n_rows();
    model->scaler.fit(fm.x);
    Matrix z = model->scaler.transform(fm.x);

    model->use_rff = spec.algorithm == Algorithm::svm_rbf_approx;
    if (model->use_rff) {
        const std::size_t dim = static_cast<std::size_t>(spec.param("rff_dim", 200));
        const std::size_t p = fm.n_cols();
        double gamma = spec.param("gamma", 0.0);
        if (gamma <= 0.0) gamma = 1.0 / static_cast<double>(p);
        Rng rng(mix_seed(spec.seed, 1));
        model->rff_weights = Matrix(dim, p);
        model->rff_offsets.resize(dim);
        const double w_sd = std::sqrt(2.0 * gamma);
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t c = 0; c < p; ++c) model->rff_weights(j, c) = w_sd * rng.next_normal();
            model->rff_offsets[j] = rng.next_double(0.0, 2.0 * std::numbers::pi);
        }
    }

    // materialize training features once (standardized [+ rff] + bias)
    std::vector<std::vector<double>> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = model->featurize(fm.x.row(i));
    const std::size_t d = phi.empty() ? 1 : phi[0].size();

    const std::size_t epochs = static_cast<std::size_t>(spec.param("epochs", 40));
    const double reg = spec.param("reg_lambda", 1e-4);

    // Subgradient descent with a 1/sqrt(t) step and suffix averaging: the
    // averaged iterate smooths out the oscillation the sign-style
    // subgradients cause.
    auto run_pegasos = [&](const std::vector<double>& target, bool hinge, double epsilon,
                           std::uint64_t stream) {
        std::vector<double> w(d, 0.0), w_avg(d, 0.0);
        const std::size_t total_steps = epochs * n;
        const std::size_t avg_from = total_steps / 2;
        std::size_t t = 0, averaged = 0;
        for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
            auto order = iota_indices(n);
            Rng rng(mix_seed(spec.seed, stream, epoch));
            shuffle(order, rng);
            for (std::size_t i : order) {
                ++t;
                const double lr = 1.0 / std::sqrt(static_cast<double>(t));
                const double decay = std::max(0.0, 1.0 - lr * reg);
                double dot = 0.0;
                for (std::size_t j = 0; j < d; ++j) dot += w[j] * phi[i][j];
                if (hinge) {
                    const double margin = target[i] * dot;
                    for (std::size_t j = 0; j < d; ++j) w[j] *= decay;
                    if (margin < 1.0)
                        for (std::size_t j = 0; j < d; ++j) w[j] += lr * target[i] * phi[i][j];
                } else {
                    const double err = dot - target[i];
                    for (std::size_t j = 0; j < d; ++j) w[j] *= decay;
                    if (std::fabs(err) > epsilon) {
                        const double sign = err > 0.0 ? 1.0 : -1.0;
                        for (std::size_t j = 0; j < d; ++j) w[j] -= lr * sign * phi[i][j];
                    }
                }
                if (t > avg_from) {
                    ++averaged;
                    for (std::size_t j = 0; j < d; ++j) w_avg[j] += w[j];
                }
            }
        }
        if (averaged > 0)
            for (std::size_t j = 0; j < d; ++j) w_avg[j] /= static_cast<double>(averaged);
        else
            w_avg = w;
        return w_avg;
    };

    if (spec.task == Task::regression) {
        double mean = 0.0;
        for (double v : fm.y) mean += v;
        mean /= static_cast<double>(n);
        model->y_mean = mean;
        std::vector<double> centered(n);
        for (std::size_t i = 0; i < n; ++i) centered[i] = fm.y[i] - mean;
        std::vector<double> w = run_pegasos(centered, false, spec.param("epsilon", 0.1), 2);
        model->weights = Matrix(1, d);
        for (std::size_t j = 0; j < d; ++j) model->weights(0, j) = w[j];
        return model;
    }

    model->class_labels = present_classes(fm.y);
    if (model->class_labels.size() < 2)
        throw SingleClassDataError("classification needs at least two classes");
    model->weights = Matrix(model->class_labels.size(), d);
    for (std::size_t k = 0; k < model->class_labels.size(); ++k) {
        std::vector<double> target(n);
        for (std::size_t i = 0; i < n; ++i)
            target[i] = static_cast<int>(fm.y[i]) == model->class_labels[k] ? 1.0 : -1.0;
        std::vector<double> w = run_pegasos(target, true, 0.0, 3 + k);
        for (std::size_t j = 0; j < d; ++j) model->weights(k, j) = w[j];
    }
    return model;
}

}  // namespace

std::unique_ptr<TrainedModel> train(const ModelSpec& spec, const features::FeatureMatrix& fm) {
    check_inputs(spec, fm);
    if (spec.task == Task::classification) {
        auto classes = present_classes(fm.y);  // validates integer labels 1..5
        if (classes.size() < 2) throw SingleClassDataError("classification needs at least two classes");
    }
    switch (spec.algorithm) {
        case Algorithm::knn: return train_knn(spec, fm);
        case Algorithm::cart: return train_cart(spec, fm);
        case Algorithm::random_forest: return train_forest(spec, fm);
        case Algorithm::gbm: return train_gbm(spec, fm);
        case Algorithm::xgb_tree: return train_xgb(spec, fm);
        case Algorithm::svm_linear:
        case Algorithm::svm_rbf_approx: return train_svm(spec, fm);
    }
    throw InvalidHyperparamError("unhandled algorithm");
}

}  // namespace starsense::models
