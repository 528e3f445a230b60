#include "reference.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace starsense::reference {

std::vector<double> naive_pdp(const models::Predictor& model, const Matrix& data,
                              std::size_t feature_index, std::span<const double> grid) {
    std::vector<double> pd(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        for (std::size_t i = 0; i < data.rows(); ++i) {
            std::vector<double> row(data.row(i).begin(), data.row(i).end());
            row[feature_index] = grid[g];
            sum += model.predict_row(row);
        }
        pd[g] = sum / static_cast<double>(data.rows());
    }
    return pd;
}

double knn_regression_brute(const Matrix& train_x, std::span<const double> train_y,
                            std::span<const double> query, std::size_t k) {
    const std::size_t n = train_x.rows();
    const std::size_t p = train_x.cols();

    std::vector<double> mean(p, 0.0), sd(p, 1.0);
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += train_x(i, j);
        mean[j] = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = train_x(i, j) - mean[j];
            ss += d * d;
        }
        const double s = std::sqrt(ss / static_cast<double>(n));
        if (s > 0.0) sd[j] = s;
    }

    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double a = (train_x(i, j) - mean[j]) / sd[j];
            const double b = (query[j] - mean[j]) / sd[j];
            d += (a - b) * (a - b);
        }
        dist.emplace_back(d, i);
    }
    std::sort(dist.begin(), dist.end());
    const std::size_t kk = std::min(k, n);
    double sum = 0.0;
    for (std::size_t i = 0; i < kk; ++i) sum += train_y[dist[i].second];
    return sum / static_cast<double>(kk);
}

std::vector<double> linear_breakdown_deltas(std::span<const double> coefficients,
                                            std::span<const double> instance,
                                            const Matrix& background) {
    std::vector<double> deltas(coefficients.size(), 0.0);
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < background.rows(); ++i) mean += background(i, j);
        mean /= static_cast<double>(background.rows());
        deltas[j] = coefficients[j] * (instance[j] - mean);
    }
    return deltas;
}

std::vector<double> impurity_from_serialized(const std::string& model_json, std::size_t feature_count) {
    const auto j = nlohmann::json::parse(model_json);
    std::vector<double> gains(feature_count, 0.0);
    for (const auto& tree : j.at("state").at("forest")) {
        for (const auto& node : tree) {
            const int feature = node.at(0).get<int>();
            if (feature >= 0) gains[static_cast<std::size_t>(feature)] += node.at(5).get<double>();
        }
    }
    return gains;
}

Matrix serial_score_rows(const std::vector<std::string>& texts, const sentiment::Lexicon& lexicon,
                         sentiment::ScoreMode mode) {
    Matrix out(texts.size(), sentiment::kNumCategories);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        auto v = sentiment::score_text(texts[i], lexicon, mode);
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[j];
    }
    return out;
}

std::vector<double> serial_predict(const models::Predictor& model, const Matrix& rows) {
    std::vector<double> out(rows.rows());
    for (std::size_t i = 0; i < rows.rows(); ++i) out[i] = model.predict_row(rows.row(i));
    return out;
}

}  // namespace starsense::reference
