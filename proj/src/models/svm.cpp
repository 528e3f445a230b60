#include "star_sense/models/svm.hpp"

#include <cmath>

namespace starsense::models {

std::vector<double> SvmModel::featurize(std::span<const double> row) const {
    std::vector<double> z(row.size());
    scaler.transform_row(row, z);
    if (!use_rff) {
        z.push_back(1.0);  // bias term
        return z;
    }
    const std::size_t d = rff_weights.rows();
    std::vector<double> phi(d + 1);
    const double scale = std::sqrt(2.0 / static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j) {
        double dot = rff_offsets[j];
        auto w = rff_weights.row(j);
        for (std::size_t i = 0; i < z.size(); ++i) dot += w[i] * z[i];
        phi[j] = scale * std::cos(dot);
    }
    phi[d] = 1.0;
    return phi;
}

double SvmModel::predict_value(std::span<const double> row) const {
    std::vector<double> phi = featurize(row);
    double dot = 0.0;
    auto w = weights.row(0);
    for (std::size_t j = 0; j < phi.size(); ++j) dot += w[j] * phi[j];
    return dot + y_mean;
}

ClassScores SvmModel::predict_dist(std::span<const double> row) const {
    ClassScores scores{};
    std::vector<double> phi = featurize(row);
    std::vector<double> margins(class_labels.size());
    for (std::size_t k = 0; k < class_labels.size(); ++k) {
        double dot = 0.0;
        auto w = weights.row(k);
        for (std::size_t j = 0; j < phi.size(); ++j) dot += w[j] * phi[j];
        margins[k] = dot;
    }
    // softmax over one-vs-rest margins: uncalibrated but ordered like them
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
