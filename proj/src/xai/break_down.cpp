#include "star_sense/xai/break_down.hpp"

#include <algorithm>
#include <cmath>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"

namespace starsense::xai {

namespace {

double mean_prediction(const models::Predictor& model, const Matrix& rows) {
    std::vector<double> pred = model.predict(rows);
    double sum = 0.0;
    for (double p : pred) sum += p;  // fixed-order reduction
    return sum / static_cast<double>(pred.size());
}

Matrix select_background(const Matrix& background, std::size_t cap, std::uint64_t seed) {
    if (background.rows() <= cap) return background;
    Rng rng(mix_seed(seed, 0xB6ULL));
    auto chosen = sample_without_replacement(background.rows(), cap, rng);
    std::sort(chosen.begin(), chosen.end());
    Matrix out(cap, background.cols());
    for (std::size_t i = 0; i < cap; ++i) {
        auto src = background.row(chosen[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

}  // namespace

AttributionReport break_down(const models::Predictor& model, const Matrix& instances,
                             const Matrix& background, const std::vector<std::string>& feature_names,
                             const BreakDownOptions& options) {
    if (background.rows() == 0) throw EmptyBackgroundError("break-down needs a non-empty background sample");
    const std::size_t p = model.feature_count();
    if (background.cols() != p || (instances.rows() > 0 && instances.cols() != p) ||
        feature_names.size() != p)
        throw DimensionMismatchError("feature count mismatch between model, instances and background");
    if (options.order == BreakDownOrder::fixed && options.fixed_order &&
        options.fixed_order->size() != p)
        throw DimensionMismatchError("fixed order must list every feature exactly once");

    Matrix bg = select_background(background, options.background_cap, options.seed);
    const std::size_t n_bg = bg.rows();

    AttributionReport report;
    report.order = options.order;
    report.n_instances = instances.rows();
    report.intercept = mean_prediction(model, bg);

    for (std::size_t inst = 0; inst < instances.rows(); ++inst) {
        auto instance = instances.row(inst);

        std::vector<std::size_t> order;
        if (options.order == BreakDownOrder::fixed) {
            order = options.fixed_order ? *options.fixed_order : iota_indices(p);
        } else {
            // greedy: rank features by the shift a single substitution causes
            std::vector<double> impact(p, 0.0);
            Matrix work = bg;
            for (std::size_t j = 0; j < p; ++j) {
                const std::vector<double> original = bg.column(j);
                for (std::size_t i = 0; i < n_bg; ++i) work(i, j) = instance[j];
                impact[j] = std::fabs(mean_prediction(model, work) - report.intercept);
                work.set_column(j, original);
            }
            order = iota_indices(p);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (impact[a] != impact[b]) return impact[a] > impact[b];
                return a < b;
            });
        }

        BreakDownResult result;
        result.intercept = report.intercept;
        Matrix work = bg;
        double previous = report.intercept;
        for (std::size_t j : order) {
            for (std::size_t i = 0; i < n_bg; ++i) work(i, j) = instance[j];
            const double current = mean_prediction(model, work);
            result.contributions.push_back({feature_names[j], instance[j], current - previous});
            previous = current;
        }
        result.final_prediction = previous;
        report.per_instance.push_back(std::move(result));
    }

    // feature-keyed mean aggregation across instances
    if (!report.per_instance.empty()) {
        std::vector<double> delta_sum(p, 0.0), value_sum(p, 0.0);
        std::vector<std::size_t> name_index(p);
        for (std::size_t j = 0; j < p; ++j) name_index[j] = j;
        for (const auto& result : report.per_instance) {
            for (const auto& c : result.contributions) {
                auto it = std::find(feature_names.begin(), feature_names.end(), c.feature);
                const std::size_t j = static_cast<std::size_t>(it - feature_names.begin());
                delta_sum[j] += c.delta;
                value_sum[j] += c.value;
            }
            report.mean_final += result.final_prediction;
        }
        const double n_inst = static_cast<double>(report.per_instance.size());
        report.mean_final /= n_inst;
        std::stable_sort(name_index.begin(), name_index.end(), [&](std::size_t a, std::size_t b) {
            return std::fabs(delta_sum[a]) > std::fabs(delta_sum[b]);
        });
        for (std::size_t j : name_index)
            report.mean_contributions.push_back({feature_names[j], value_sum[j] / n_inst, delta_sum[j] / n_inst});
    }
    return report;
}

std::vector<Contribution> group_tail_contributions(const std::vector<Contribution>& contributions,
                                                   std::size_t keep) {
    if (contributions.size() <= keep + 1) return contributions;
    std::vector<Contribution> out(contributions.begin(),
                                  contributions.begin() + static_cast<long>(keep));
    Contribution tail{"all other factors", 0.0, 0.0};
    for (std::size_t i = keep; i < contributions.size(); ++i) tail.delta += contributions[i].delta;
    out.push_back(tail);
    return out;
}

}  // namespace starsense::xai
