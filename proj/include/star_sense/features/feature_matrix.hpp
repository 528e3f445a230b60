#pragma once

#include <map>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/ingest/table.hpp"

namespace starsense::features {

// Model-ready design matrix. No missing values; feature names unique; y is
// the rating target (real for regression, integer class 1..5 for
// classification).
struct FeatureMatrix {
    Matrix x;
    std::vector<std::string> feature_names;
    std::vector<double> y;
    std::map<std::string, std::size_t> encoding_map;  // "column=level" -> column index

    std::size_t n_rows() const { return x.rows(); }
    std::size_t n_cols() const { return x.cols(); }
};

struct OneHotColumns {
    std::vector<std::string> names;               // "column=level", levels lexicographic
    Matrix columns;                               // n_rows x n_levels, 0/1
    std::map<std::string, std::size_t> encoding;  // level -> local column index
};

OneHotColumns one_hot_encode(const ingest::ReviewTable& t, const std::string& column);

struct AssembleOptions {
    std::string target = "reviews.rating";
    std::vector<std::string> categorical = {"brand", "primaryCategories"};
    std::vector<std::string> numeric_passthrough = {"reviews.numHelpful"};
    bool skip_absent = true;  // toy tables may lack brand columns
};

// X layout: [10 sentiment columns | one-hot categoricals | numeric
// passthrough]; y = target column. RowMismatchError when sentiment rows do
// not align with the table.
FeatureMatrix assemble(const ingest::ReviewTable& t, const Matrix& sentiments,
                       const AssembleOptions& options = {});

double pearson_correlation(std::span<const double> a, std::span<const double> b);

struct LeakageVerdict {
    double r = 0.0;
    double threshold = 0.0;
    bool flagged = false;
    std::string recommendation;
};

// Flags `candidate` as target leakage when |r(candidate, y)| exceeds the
// threshold.
LeakageVerdict prescreen(const FeatureMatrix& fm, std::span<const double> candidate,
                         double threshold = 0.5);

// Persistence: header = feature_names + "__target__", full round-trip
// precision.
void save_feature_csv(const FeatureMatrix& fm, const std::string& path);
FeatureMatrix load_feature_csv(const std::string& path);

}  // namespace starsense::features
