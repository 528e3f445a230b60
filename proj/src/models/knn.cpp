#include "star_sense/models/knn.hpp"

#include <algorithm>
#include <cmath>

namespace starsense::models {

std::vector<std::size_t> KnnModel::neighbors(std::span<const double> row) const {
    const std::size_t n = train_x.rows();
    std::vector<double> z(row.size());
    scaler.transform_row(row, z);

    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        auto r = train_x.row(i);
        for (std::size_t j = 0; j < z.size(); ++j) {
            double diff = z[j] - r[j];
            d += diff * diff;
        }
        dist[i] = {d, i};
    }
    const std::size_t kk = std::min(k, n);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(kk), dist.end());
    std::vector<std::size_t> out(kk);
    for (std::size_t i = 0; i < kk; ++i) out[i] = dist[i].second;
    return out;
}

double KnnModel::predict_value(std::span<const double> row) const {
    auto idx = neighbors(row);
    double sum = 0.0;
    for (std::size_t i : idx) sum += train_y[i];
    return sum / static_cast<double>(idx.size());
}

ClassScores KnnModel::predict_dist(std::span<const double> row) const {
    ClassScores scores{};
    auto idx = neighbors(row);
    for (std::size_t i : idx) scores[static_cast<std::size_t>(train_y[i]) - 1] += 1.0;
    for (double& s : scores) s /= static_cast<double>(idx.size());
    return scores;
}

}  // namespace starsense::models
