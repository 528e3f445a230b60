#pragma once

#include <map>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/models/model.hpp"

namespace starsense::xai {

enum class SlopeSign { positive, negative, flat };

struct PdpCurve {
    std::string feature;
    std::vector<double> grid;       // strictly ascending quantile points
    std::vector<double> pd_values;  // mean prediction with the feature forced to each grid value
    double slope = 0.0;             // least-squares fit over (grid, pd_values)
    SlopeSign slope_sign = SlopeSign::flat;
};

SlopeSign classify_slope(double slope, double flat_tol);

// Friedman partial dependence: grid from the feature's quantiles
// (deduplicated; ConstantFeatureError when fewer than 2 distinct points);
// pd(v) = mean over all rows of predict(row with feature := v).
PdpCurve partial_dependence(const models::Predictor& model, std::size_t feature_index,
                            const Matrix& data, std::size_t grid_size = 20,
                            const std::string& feature_name = "");

enum class ExpectedSign { positive, negative };

struct SignExpectation {
    std::map<std::string, ExpectedSign> signs;
};

struct SignMismatch {
    std::string feature;
    std::string kind;  // "inverted" or "flat"
    double slope = 0.0;
    std::string expected;
};

// Flags curves whose fitted slope contradicts the expected sign, and curves
// expected to matter whose slope is flat within flat_tol.
std::vector<SignMismatch> detect_sign_mismatch(const std::vector<PdpCurve>& curves,
                                               const SignExpectation& expected, double flat_tol);

}  // namespace starsense::xai
