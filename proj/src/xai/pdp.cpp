#include "star_sense/xai/pdp.hpp"

#include <algorithm>
#include <cmath>

#include "star_sense/core/error.hpp"

namespace starsense::xai {

SlopeSign classify_slope(double slope, double flat_tol) {
    if (std::fabs(slope) <= flat_tol) return SlopeSign::flat;
    return slope > 0.0 ? SlopeSign::positive : SlopeSign::negative;
}

PdpCurve partial_dependence(const models::Predictor& model, std::size_t feature_index,
                            const Matrix& data, std::size_t grid_size, const std::string& feature_name) {
    if (grid_size < 2) throw InvalidHyperparamError("grid_size must be >= 2");
    if (data.rows() == 0) throw EmptyDataError("partial dependence needs data rows");
    if (data.cols() != model.feature_count() || feature_index >= data.cols())
        throw DimensionMismatchError("feature index out of range");

    PdpCurve curve;
    curve.feature = feature_name.empty() ? "feature_" + std::to_string(feature_index) : feature_name;

    // quantile grid, deduplicated
    std::vector<double> values = data.column(feature_index);
    std::sort(values.begin(), values.end());
    for (std::size_t g = 0; g < grid_size; ++g) {
        const double q = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        const std::size_t idx = static_cast<std::size_t>(
            std::llround(q * static_cast<double>(values.size() - 1)));
        const double v = values[idx];
        if (curve.grid.empty() || v > curve.grid.back()) curve.grid.push_back(v);
    }
    if (curve.grid.size() < 2)
        throw ConstantFeatureError("feature " + curve.feature + " has a single distinct value");

    Matrix work = data;
    curve.pd_values.resize(curve.grid.size());
    for (std::size_t g = 0; g < curve.grid.size(); ++g) {
        for (std::size_t i = 0; i < work.rows(); ++i) work(i, feature_index) = curve.grid[g];
        std::vector<double> pred = model.predict(work);
        double sum = 0.0;
        for (double v : pred) sum += v;
        curve.pd_values[g] = sum / static_cast<double>(pred.size());
    }

    // least-squares slope over the curve
    const std::size_t m = curve.grid.size();
    double gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        gx += curve.grid[i];
        gy += curve.pd_values[i];
    }
    gx /= static_cast<double>(m);
    gy /= static_cast<double>(m);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num += (curve.grid[i] - gx) * (curve.pd_values[i] - gy);
        den += (curve.grid[i] - gx) * (curve.grid[i] - gx);
    }
    curve.slope = den > 0.0 ? num / den : 0.0;
    curve.slope_sign = classify_slope(curve.slope, 0.0);
    return curve;
}

std::vector<SignMismatch> detect_sign_mismatch(const std::vector<PdpCurve>& curves,
                                               const SignExpectation& expected, double flat_tol) {
    std::vector<SignMismatch> mismatches;
    for (const PdpCurve& curve : curves) {
        auto it = expected.signs.find(curve.feature);
        if (it == expected.signs.end()) continue;
        const SlopeSign sign = classify_slope(curve.slope, flat_tol);
        const char* wanted = it->second == ExpectedSign::positive ? "positive" : "negative";
        if (sign == SlopeSign::flat) {
            mismatches.push_back({curve.feature, "flat", curve.slope, wanted});
        } else if ((sign == SlopeSign::positive) != (it->second == ExpectedSign::positive)) {
            mismatches.push_back({curve.feature, "inverted", curve.slope, wanted});
        }
    }
    return mismatches;
}

}  // namespace starsense::xai
