#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "star_sense/core/matrix.hpp"

namespace starsense::models {

// Per-feature z-score standardization. Constant features pass through
// (scale 1), so they contribute zero distance after centering.
struct Scaler {
    std::vector<double> means;
    std::vector<double> sds;

    void fit(const Matrix& x) {
        const std::size_t n = x.rows(), p = x.cols();
        means.assign(p, 0.0);
        sds.assign(p, 1.0);
        if (n == 0) return;
        for (std::size_t j = 0; j < p; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += x(i, j);
            means[j] = sum / static_cast<double>(n);
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = x(i, j) - means[j];
                ss += d * d;
            }
            double sd = std::sqrt(ss / static_cast<double>(n));
            sds[j] = sd > 0.0 ? sd : 1.0;
        }
    }

    void transform_row(std::span<const double> in, std::span<double> out) const {
        for (std::size_t j = 0; j < in.size(); ++j) out[j] = (in[j] - means[j]) / sds[j];
    }

    Matrix transform(const Matrix& x) const {
        Matrix out(x.rows(), x.cols());
        for (std::size_t i = 0; i < x.rows(); ++i) transform_row(x.row(i), out.row(i));
        return out;
    }
};

}  // namespace starsense::models
