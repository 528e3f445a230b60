#include "star_sense/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "star_sense/core/error.hpp"

namespace starsense::bench {

double rmse(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size()) throw LengthMismatchError("prediction and actual lengths differ");
    if (pred.empty()) throw EmptyInputError("rmse of empty vectors");
    double sse = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double e = pred[i] - actual[i];
        sse += e * e;
    }
    return std::sqrt(sse / static_cast<double>(pred.size()));
}

ConfusionMatrix ConfusionMatrix::from_labels(std::span<const int> actual, std::span<const int> predicted) {
    if (actual.size() != predicted.size()) throw LengthMismatchError("label vectors differ in length");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] < 1 || actual[i] > static_cast<int>(models::kNumClasses) || predicted[i] < 1 ||
            predicted[i] > static_cast<int>(models::kNumClasses))
            throw NonIntegerTargetError("labels must be classes 1..5");
        cm.add(actual[i], predicted[i]);
    }
    return cm;
}

std::size_t ConfusionMatrix::total() const {
    std::size_t sum = 0;
    for (const auto& row : counts_)
        for (std::size_t v : row) sum += v;
    return sum;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t sum = 0;
    for (std::size_t k = 0; k < models::kNumClasses; ++k) sum += counts_[k][k];
    return sum;
}

double accuracy(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0) throw EmptyInputError("confusion matrix is empty");
    return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

double no_information_rate(std::span<const int> labels) {
    if (labels.empty()) throw EmptyInputError("no labels");
    std::map<int, std::size_t> counts;
    for (int label : labels) ++counts[label];
    std::size_t max_count = 0;
    for (const auto& [label, count] : counts) max_count = std::max(max_count, count);
    return static_cast<double>(max_count) / static_cast<double>(labels.size());
}

double binomial_test_accuracy_above_nir(std::size_t correct, std::size_t total, double nir) {
    if (total == 0) throw EmptyInputError("binomial test needs observations");
    if (nir <= 0.0) return correct > 0 ? 0.0 : 1.0;
    if (nir >= 1.0) return 1.0;
    // P(X >= correct), summed in log space for numerical range
    const double log_p = std::log(nir);
    const double log_q = std::log1p(-nir);
    double p_value = 0.0;
    for (std::size_t i = correct; i <= total; ++i) {
        const double n = static_cast<double>(total);
        const double k = static_cast<double>(i);
        const double log_choose =
            std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        p_value += std::exp(log_choose + k * log_p + (n - k) * log_q);
    }
    return std::min(p_value, 1.0);
}

}  // namespace starsense::bench
