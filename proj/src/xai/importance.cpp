#include "star_sense/xai/importance.hpp"

#include <algorithm>
#include <cmath>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"

namespace starsense::xai {

namespace {

double loss(LossMetric metric, std::span<const double> pred, std::span<const double> y) {
    double acc = 0.0;
    switch (metric) {
        case LossMetric::rmse:
            for (std::size_t i = 0; i < pred.size(); ++i) {
                const double e = pred[i] - y[i];
                acc += e * e;
            }
            return std::sqrt(acc / static_cast<double>(pred.size()));
        case LossMetric::error_rate:
            for (std::size_t i = 0; i < pred.size(); ++i)
                if (pred[i] != y[i]) acc += 1.0;
            return acc / static_cast<double>(pred.size());
    }
    return 0.0;
}

void normalize(ImportanceReport& report) {
    double max_raw = 0.0;
    for (const auto& e : report.entries) max_raw = std::max(max_raw, e.raw);
    for (auto& e : report.entries)
        e.normalized = max_raw > 0.0 ? std::max(e.raw, 0.0) / max_raw * 100.0 : 0.0;
}

}  // namespace

ImportanceReport permutation_importance(const models::Predictor& model, const Matrix& x,
                                        std::span<const double> y,
                                        const std::vector<std::string>& feature_names,
                                        LossMetric metric, std::size_t repeats, std::uint64_t seed) {
    if (x.rows() != y.size()) throw DimensionMismatchError("x rows and y length differ");
    if (x.cols() != model.feature_count() || feature_names.size() != x.cols())
        throw DimensionMismatchError("feature count mismatch");
    if (repeats < 1) throw InvalidHyperparamError("repeats must be >= 1");
    if (x.rows() == 0) throw EmptyDataError("no rows to permute");

    ImportanceReport report;
    report.method = ImportanceMethod::permutation;
    report.metric = metric;

    std::vector<double> baseline_pred = model.predict(x);
    report.baseline = loss(metric, baseline_pred, y);

    const std::size_t n = x.rows();
    Matrix work = x;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double total = 0.0;
        const std::vector<double> original = x.column(j);
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            auto perm = iota_indices(n);
            Rng rng(mix_seed(seed, j, rep));
            shuffle(perm, rng);
            for (std::size_t i = 0; i < n; ++i) work(i, j) = original[perm[i]];
            std::vector<double> pred = model.predict(work);
            total += loss(metric, pred, y) - report.baseline;
        }
        work.set_column(j, original);
        report.entries.push_back({feature_names[j], total / static_cast<double>(repeats), 0.0});
    }
    normalize(report);
    return report;
}

ImportanceReport impurity_importance(const models::TrainedModel& model) {
    const std::vector<models::Tree>* forest = model.trees();
    if (forest == nullptr)
        throw UnsupportedModelError("impurity importance needs a tree-based model, got " +
                                    models::to_string(model.spec().algorithm));

    ImportanceReport report;
    report.method = ImportanceMethod::impurity;
    const auto& names = model.feature_names();
    std::vector<double> gains(names.size(), 0.0);
    for (const models::Tree& tree : *forest)
        for (const models::TreeNode& node : tree.nodes)
            if (node.feature >= 0) gains[static_cast<std::size_t>(node.feature)] += node.gain;
    for (std::size_t j = 0; j < names.size(); ++j) report.entries.push_back({names[j], gains[j], 0.0});
    normalize(report);
    return report;
}

ThresholdFilterResult importance_threshold_filter(const ImportanceReport& report, double cutoff) {
    ThresholdFilterResult result;
    result.all_zero = true;
    for (const auto& e : report.entries) {
        if (e.normalized > 0.0) result.all_zero = false;
        if (e.normalized >= cutoff) result.kept.push_back(e.feature);
    }
    if (result.all_zero) result.kept.clear();
    return result;
}

}  // namespace starsense::xai
