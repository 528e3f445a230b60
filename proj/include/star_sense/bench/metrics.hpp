#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "star_sense/models/tree.hpp"

namespace starsense::bench {

double rmse(std::span<const double> pred, std::span<const double> actual);

// 5x5 counts, actual rows x predicted columns; labels 1..5.
class ConfusionMatrix {
public:
    ConfusionMatrix() { counts_.fill({}); }

    static ConfusionMatrix from_labels(std::span<const int> actual, std::span<const int> predicted);

    void add(int actual, int predicted) {
        ++counts_[static_cast<std::size_t>(actual - 1)][static_cast<std::size_t>(predicted - 1)];
    }
    std::size_t at(int actual, int predicted) const {
        return counts_[static_cast<std::size_t>(actual - 1)][static_cast<std::size_t>(predicted - 1)];
    }
    std::size_t total() const;
    std::size_t trace() const;

private:
    std::array<std::array<std::size_t, models::kNumClasses>, models::kNumClasses> counts_;
};

double accuracy(const ConfusionMatrix& cm);  // trace / total; EmptyInputError when total == 0

// Largest class share: the accuracy of always predicting the majority class.
double no_information_rate(std::span<const int> labels);

// One-sided exact binomial test of accuracy > NIR: P(X >= correct) for
// X ~ Binomial(total, nir).
double binomial_test_accuracy_above_nir(std::size_t correct, std::size_t total, double nir);

}  // namespace starsense::bench
