#include "star_sense/features/feature_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "star_sense/core/csv.hpp"
#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"
#include "star_sense/sentiment/lexicon.hpp"

namespace starsense::features {

OneHotColumns one_hot_encode(const ingest::ReviewTable& t, const std::string& column) {
    const ingest::Column& col = t.column(column);
    if (col.is_numeric())
        throw TypeConflictError("column " + column + " is numeric, cannot one-hot encode");

    std::set<std::string> levels;
    for (std::size_t i = 0; i < col.values.size(); ++i)
        if (!col.missing[i]) levels.insert(col.values[i]);

    OneHotColumns out;
    out.columns = Matrix(t.n_rows(), levels.size());
    std::size_t j = 0;
    for (const auto& level : levels) {  // std::set iterates lexicographically
        out.names.push_back(column + "=" + level);
        out.encoding[level] = j;
        ++j;
    }
    for (std::size_t i = 0; i < t.n_rows(); ++i) {
        if (col.missing[i]) continue;  // all-zero row for missing cells
        out.columns(i, out.encoding.at(col.values[i])) = 1.0;
    }
    return out;
}

FeatureMatrix assemble(const ingest::ReviewTable& t, const Matrix& sentiments,
                       const AssembleOptions& options) {
    if (sentiments.rows() != t.n_rows())
        throw RowMismatchError("sentiment rows (" + std::to_string(sentiments.rows()) +
                               ") do not match table rows (" + std::to_string(t.n_rows()) + ")");
    const ingest::Column& target = t.column(options.target);
    if (!target.is_numeric()) throw TypeConflictError("target column " + options.target + " is not numeric");
    for (std::size_t i = 0; i < t.n_rows(); ++i)
        if (target.missing[i])
            throw EmptyDataError("target has missing values; run preprocessing first");

    FeatureMatrix fm;
    const auto& cats = sentiment::category_names();
    if (sentiments.cols() != cats.size())
        throw DimensionMismatchError("sentiment matrix must have " + std::to_string(cats.size()) + " columns");
    for (const auto& name : cats) fm.feature_names.push_back(name);

    std::vector<OneHotColumns> onehots;
    for (const auto& column : options.categorical) {
        if (!t.has_column(column)) {
            if (options.skip_absent) continue;
            throw MissingColumnError("column not found: " + column);
        }
        if (t.column(column).missing_count() > 0)
            throw EmptyDataError("column " + column +
                                 " has missing cells; run preprocessing first (one-hot rows must sum to 1)");
        OneHotColumns oh = one_hot_encode(t, column);
        for (std::size_t k = 0; k < oh.names.size(); ++k) fm.encoding_map[oh.names[k]] = fm.feature_names.size() + k;
        for (const auto& name : oh.names) fm.feature_names.push_back(name);
        onehots.push_back(std::move(oh));
    }

    std::vector<const ingest::Column*> passthrough;
    for (const auto& column : options.numeric_passthrough) {
        if (!t.has_column(column)) {
            if (options.skip_absent) continue;
            throw MissingColumnError("column not found: " + column);
        }
        const ingest::Column& col = t.column(column);
        if (!col.is_numeric()) throw TypeConflictError("column " + column + " is not numeric");
        for (std::size_t i = 0; i < t.n_rows(); ++i)
            if (col.missing[i])
                throw EmptyDataError("column " + column + " has missing values; run preprocessing first");
        fm.feature_names.push_back(column);
        passthrough.push_back(&col);
    }

    const std::size_t n = t.n_rows();
    const std::size_t p = fm.feature_names.size();
    fm.x = Matrix(n, p);
    fm.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        for (std::size_t s = 0; s < cats.size(); ++s) fm.x(i, j++) = sentiments(i, s);
        for (const auto& oh : onehots)
            for (std::size_t k = 0; k < oh.columns.cols(); ++k) fm.x(i, j++) = oh.columns(i, k);
        for (const auto* col : passthrough) fm.x(i, j++) = col->numbers[i];
        fm.y[i] = target.numbers[i];
    }
    return fm;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw LengthMismatchError("vectors differ in length");
    if (a.size() < 2) throw LengthMismatchError("need at least 2 observations");
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) throw ConstantVectorError("correlation undefined for constant vector");
    return cov / std::sqrt(var_a * var_b);
}

LeakageVerdict prescreen(const FeatureMatrix& fm, std::span<const double> candidate, double threshold) {
    LeakageVerdict verdict;
    verdict.threshold = threshold;
    verdict.r = pearson_correlation(candidate, fm.y);
    verdict.flagged = std::fabs(verdict.r) > threshold;
    verdict.recommendation = verdict.flagged
        ? "drop: candidate is strongly aligned with the target (|r| > " + fmt_fixed(threshold, 3) + ")"
        : "keep: no leakage detected at threshold " + fmt_fixed(threshold, 3);
    return verdict;
}

void save_feature_csv(const FeatureMatrix& fm, const std::string& path) {
    CsvData csv;
    csv.header = fm.feature_names;
    csv.header.push_back("__target__");
    csv.rows.assign(fm.n_rows(), {});
    for (std::size_t i = 0; i < fm.n_rows(); ++i) {
        auto& row = csv.rows[i];
        row.reserve(fm.n_cols() + 1);
        for (std::size_t j = 0; j < fm.n_cols(); ++j) row.push_back(fmt_double(fm.x(i, j)));
        row.push_back(fmt_double(fm.y[i]));
    }
    write_csv(path, csv);
}

FeatureMatrix load_feature_csv(const std::string& path) {
    CsvData csv = read_csv(path);
    if (csv.header.empty() || csv.header.back() != "__target__")
        throw MissingColumnError("feature CSV must end with a __target__ column");
    FeatureMatrix fm;
    fm.feature_names.assign(csv.header.begin(), csv.header.end() - 1);
    {
        std::set<std::string> unique(fm.feature_names.begin(), fm.feature_names.end());
        if (unique.size() != fm.feature_names.size())
            throw SerializationError("duplicate feature names in " + path);
    }
    const std::size_t p = fm.feature_names.size();
    fm.x = Matrix(csv.rows.size(), p);
    fm.y.resize(csv.rows.size());
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        for (std::size_t j = 0; j <= p; ++j) {
            auto v = parse_double(csv.rows[i][j]);
            if (!v)
                throw TypeConflictError("feature CSV row " + std::to_string(i + 1) + ", column " +
                                        csv.header[j] + ": not a number");
            if (j < p) fm.x(i, j) = *v;
            else fm.y[i] = *v;
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        const std::string& name = fm.feature_names[j];
        if (name.find('=') != std::string::npos) fm.encoding_map[name] = j;
    }
    return fm;
}

}  // namespace starsense::features
