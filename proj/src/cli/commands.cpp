#include "star_sense/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "star_sense/bench/benchmark.hpp"
#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/core/text_report.hpp"
#include "star_sense/features/feature_matrix.hpp"
#include "star_sense/ingest/preprocess.hpp"
#include "star_sense/models/serialize.hpp"
#include "star_sense/render/svg.hpp"
#include "star_sense/sentiment/scorer.hpp"
#include "star_sense/xai/break_down.hpp"
#include "star_sense/xai/importance.hpp"
#include "star_sense/xai/pdp.hpp"

namespace starsense::cli {

namespace fs = std::filesystem;

int exit_code_for(Stage stage) { return static_cast<int>(stage); }

namespace {

// user-supplied paths are checked up front so a typo is a config error,
// not a mid-pipeline failure
void require_file(const std::string& path, const std::string& what) {
    if (!std::filesystem::exists(path)) throw ConfigError(what + " not found: " + path);
}

std::string timestamp_value(const RunConfig& config) {
    if (config.fixed_epoch) return "0";
    return std::to_string(static_cast<long long>(std::time(nullptr)));
}

std::string wall_value(const RunConfig& config, double seconds) {
    return config.fixed_epoch ? "0.000" : fmt_fixed(seconds, 3);
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ---- pipeline shared by the study commands -------------------------------

struct Pipeline {
    ingest::ReviewTable table;  // preprocessed
    ingest::PipelineLog log;
    ingest::StatsReport stats;
    std::optional<features::LeakageVerdict> prescreen_verdict;
    std::size_t prescreen_rows = 0;
    features::FeatureMatrix fm;
    std::size_t missing_text_rows = 0;
};

// Leakage screen on roughly the first half of the rows, run before the
// redundant-column drop removes reviews.doRecommend.
std::optional<features::LeakageVerdict> screen_do_recommend(const ingest::ReviewTable& raw,
                                                            double threshold, std::size_t* rows_used) {
    if (!raw.has_column("reviews.doRecommend") || !raw.has_column("reviews.rating")) return std::nullopt;
    const auto& rec = raw.column("reviews.doRecommend");
    const auto& rating = raw.column("reviews.rating");
    const std::size_t half = (raw.n_rows() + 1) / 2;
    std::vector<double> candidate, target;
    for (std::size_t i = 0; i < half; ++i) {
        if (rec.missing[i] || rating.missing[i]) continue;
        const std::string& v = rec.values[i];
        double encoded;
        if (v == "TRUE" || v == "True" || v == "true" || v == "Yes" || v == "yes") encoded = 1.0;
        else if (v == "FALSE" || v == "False" || v == "false" || v == "No" || v == "no") encoded = 0.0;
        else continue;
        candidate.push_back(encoded);
        target.push_back(rating.numbers[i]);
    }
    if (rows_used) *rows_used = candidate.size();
    if (candidate.size() < 2) return std::nullopt;
    features::FeatureMatrix stub;
    stub.y = target;
    try {
        return features::prescreen(stub, candidate, threshold);
    } catch (const ConstantVectorError&) {
        return std::nullopt;
    }
}

Pipeline run_pipeline(const RunConfig& config) {
    if (config.input.empty()) throw ConfigError("paths.input is required");
    if (config.lexicon.empty()) throw ConfigError("paths.lexicon is required");
    if (!fs::exists(config.input)) throw ConfigError("input file not found: " + config.input);
    if (!fs::exists(config.lexicon)) throw ConfigError("lexicon file not found: " + config.lexicon);

    Pipeline pipe;
    ingest::ReviewTable raw = ingest::load_reviews(config.input, {}, &pipe.log);
    pipe.prescreen_verdict = screen_do_recommend(raw, config.leakage_threshold, &pipe.prescreen_rows);

    ingest::PreprocessOptions options;
    options.sparse_threshold = config.sparse_threshold;
    pipe.table = ingest::preprocess(std::move(raw), options, pipe.log);
    pipe.stats = ingest::descriptive_stats(pipe.table);

    auto lexicon = sentiment::load_lexicon(config.lexicon);
    auto mode = config.score_mode == "count" ? sentiment::ScoreMode::count : sentiment::ScoreMode::rate;
    auto scored = sentiment::score_table(pipe.table, config.text_column, lexicon, mode);
    pipe.missing_text_rows = scored.missing_text_rows;
    pipe.fm = features::assemble(pipe.table, scored.scores);
    return pipe;
}

void write_ingest_report(const Pipeline& pipe, const RunConfig& config, const std::string& path) {
    TextReport report("star-sense ingest report");
    report.kv("generated_at", timestamp_value(config));
    report.kv("n_rows", static_cast<long long>(pipe.table.n_rows()));
    report.kv("n_columns", static_cast<long long>(pipe.table.n_cols()));

    std::vector<std::vector<std::string>> ledger_rows;
    for (const auto& step : pipe.log.steps) {
        std::string dropped;
        for (const auto& name : step.columns_dropped) dropped += (dropped.empty() ? "" : ", ") + name;
        std::string notes;
        for (const auto& note : step.notes) notes += (notes.empty() ? "" : "; ") + note;
        ledger_rows.push_back({step.step, std::to_string(step.rows_before),
                               std::to_string(step.rows_after), dropped, notes});
    }
    report.table("row_ledger", {"step", "rows_before", "rows_after", "columns_dropped", "notes"},
                 ledger_rows);

    std::vector<std::vector<std::string>> drop_rows;
    for (const auto& spec : pipe.table.dropped_columns())
        drop_rows.push_back({spec.name, spec.drop_reason ? ingest::to_string(*spec.drop_reason) : ""});
    report.table("dropped_columns", {"column", "reason"}, drop_rows);

    if (pipe.prescreen_verdict) {
        report.section("prescreen reviews.doRecommend");
        report.kv("rows_used", static_cast<long long>(pipe.prescreen_rows));
        report.kv("r", pipe.prescreen_verdict->r, 4);
        report.kv("threshold", pipe.prescreen_verdict->threshold, 3);
        report.kv("flagged", pipe.prescreen_verdict->flagged ? "yes" : "no");
        report.kv("recommendation", pipe.prescreen_verdict->recommendation);
    }

    report.section("descriptive statistics");
    for (const auto& col : pipe.stats.columns) {
        report.kv(col.name + ".missing_rate_percent", col.missing_rate * 100.0, 2);
        if (col.levels.empty()) continue;
        std::vector<std::vector<std::string>> level_rows;
        for (const auto& level : col.levels)
            level_rows.push_back({level.level, std::to_string(level.count), fmt_fixed(level.percent, 2)});
        report.table("levels " + col.name, {"level", "count", "percent"}, level_rows);
    }
    report.save(path);
}

render::ChartSpec benchmark_chart(const bench::BenchmarkResult& result, const std::string& title) {
    render::ChartSpec chart;
    chart.kind = render::ChartKind::bar_h;
    chart.title = title;
    chart.x_label = result.task == models::Task::regression ? "RMSE (lower is better)"
                                                            : "accuracy (higher is better)";
    std::vector<std::size_t> order(result.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.entries[a].rank < result.entries[b].rank;
    });
    for (std::size_t i : order) {
        chart.series.labels.push_back(result.entries[i].name);
        chart.series.values.push_back(result.entries[i].metric);
    }
    return chart;
}

void write_benchmark_report(const bench::BenchmarkResult& result, const RunConfig& config,
                            const std::string& path) {
    const bool regression = result.task == models::Task::regression;
    TextReport report(regression ? "star-sense benchmark (regression)"
                                 : "star-sense benchmark (classification)");
    report.kv("generated_at", timestamp_value(config));
    report.kv("n_train", static_cast<long long>(result.n_train));
    report.kv("n_test", static_cast<long long>(result.n_test));
    report.kv("metric", regression ? "rmse" : "accuracy");
    if (!regression) {
        report.kv("no_information_rate", result.nir, 4);
        report.line("# any model with accuracy <= NIR carries no information over the majority class");
    }

    std::vector<std::vector<std::string>> rows;
    for (const auto& entry : result.entries) {
        std::vector<std::string> row = {entry.name, fmt_fixed(entry.metric, 4),
                                        std::to_string(entry.rank),
                                        entry.fold_scores.empty() ? "-" : fmt_fixed(entry.cv_mean, 4),
                                        entry.fold_scores.empty() ? "-" : fmt_fixed(entry.cv_sd, 4),
                                        wall_value(config, entry.wall_seconds)};
        if (!regression) {
            row.push_back(entry.at_or_below_nir ? "FLAG" : "ok");
            row.push_back(fmt_fixed(entry.p_value_vs_nir, 4));
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::string> header = {"algorithm", "metric", "rank", "cv_mean", "cv_sd", "wall_s"};
    if (!regression) {
        header.push_back("vs_nir");
        header.push_back("p_value");
    }
    report.table("benchmark", header, rows);

    std::vector<std::vector<std::string>> fold_rows;
    for (const auto& entry : result.entries) {
        if (entry.fold_scores.empty()) continue;
        std::string scores;
        for (double s : entry.fold_scores) scores += (scores.empty() ? "" : ", ") + fmt_fixed(s, 4);
        fold_rows.push_back({entry.name, scores});
    }
    if (!fold_rows.empty()) report.table("fold_scores", {"algorithm", "folds"}, fold_rows);

    if (!regression) {
        for (const auto& entry : result.entries) {
            std::vector<std::vector<std::string>> cm_rows;
            for (int actual = 1; actual <= 5; ++actual) {
                std::vector<std::string> row = {std::to_string(actual) + "*"};
                for (int predicted = 1; predicted <= 5; ++predicted)
                    row.push_back(std::to_string(entry.confusion.at(actual, predicted)));
                cm_rows.push_back(std::move(row));
            }
            report.table("confusion " + entry.name, {"actual\\pred", "1*", "2*", "3*", "4*", "5*"},
                         cm_rows);
        }
    }
    report.save(path);
}

Matrix cap_rows(const Matrix& data, std::size_t cap, std::uint64_t seed) {
    if (data.rows() <= cap) return data;
    Rng rng(mix_seed(seed, 0xCA9ULL));
    auto chosen = sample_without_replacement(data.rows(), cap, rng);
    std::sort(chosen.begin(), chosen.end());
    Matrix out(cap, data.cols());
    for (std::size_t i = 0; i < cap; ++i) {
        auto src = data.row(chosen[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

std::vector<std::size_t> pdp_feature_indices(const std::vector<std::string>& feature_names) {
    std::vector<std::size_t> indices;
    for (const auto& category : sentiment::category_names()) {
        auto it = std::find(feature_names.begin(), feature_names.end(), category);
        if (it != feature_names.end())
            indices.push_back(static_cast<std::size_t>(it - feature_names.begin()));
    }
    if (indices.empty())
        for (std::size_t j = 0; j < std::min<std::size_t>(feature_names.size(), 12); ++j)
            indices.push_back(j);
    return indices;
}

void write_importance_outputs(const models::TrainedModel& model, const Matrix& x,
                              std::span<const double> y, const RunConfig& config,
                              const std::string& out_dir, const std::string& prefix) {
    const auto metric = model.spec().task == models::Task::regression ? xai::LossMetric::rmse
                                                                      : xai::LossMetric::error_rate;
    auto permutation = xai::permutation_importance(model, x, y, model.feature_names(), metric,
                                                   config.importance_repeats, config.seed);

    TextReport report("star-sense feature importance");
    report.kv("generated_at", timestamp_value(config));
    report.kv("method", "permutation");
    report.kv("metric", metric == xai::LossMetric::rmse ? "rmse" : "error_rate");
    report.kv("baseline", permutation.baseline, 6);
    report.kv("repeats", static_cast<long long>(config.importance_repeats));

    auto importance_rows = [](const xai::ImportanceReport& rep) {
        std::vector<std::size_t> order(rep.entries.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rep.entries[a].normalized > rep.entries[b].normalized;
        });
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i : order)
            rows.push_back({rep.entries[i].feature, fmt_fixed(rep.entries[i].raw, 6),
                            fmt_fixed(rep.entries[i].normalized, 2)});
        return rows;
    };
    report.table("permutation_importance", {"feature", "raw", "normalized"},
                 importance_rows(permutation));

    auto filtered = xai::importance_threshold_filter(permutation, config.importance_cutoff);
    report.section("threshold filter");
    report.kv("cutoff", config.importance_cutoff, 2);
    if (filtered.all_zero) report.line("warning: all importance scores are zero; nothing kept");
    std::string kept;
    for (const auto& name : filtered.kept) kept += (kept.empty() ? "" : ", ") + name;
    report.kv("kept", kept.empty() ? "(none)" : kept);

    auto chart_for = [&](const xai::ImportanceReport& rep, const std::string& title) {
        render::ChartSpec chart;
        chart.kind = render::ChartKind::bar_h;
        chart.title = title;
        chart.x_label = "importance (max = 100)";
        auto rows = importance_rows(rep);
        for (const auto& row : rows) {
            chart.series.labels.push_back(row[0]);
            auto v = parse_double(row[2]);
            chart.series.values.push_back(v ? *v : 0.0);
        }
        return chart;
    };
    render::save_chart(chart_for(permutation, "Global feature importance (permutation)"),
                       join_path(out_dir, prefix + "_importance_permutation.svg"));

    if (model.trees() != nullptr) {
        auto impurity = xai::impurity_importance(model);
        report.section("impurity importance (tree split gains)");
        report.table("impurity_importance", {"feature", "raw", "normalized"}, importance_rows(impurity));
        render::save_chart(chart_for(impurity, "Global feature importance (impurity)"),
                           join_path(out_dir, prefix + "_importance_impurity.svg"));
    }
    report.save(join_path(out_dir, prefix + "_importance.txt"));
}

render::ChartSpec waterfall_chart(double intercept, const std::vector<xai::Contribution>& contributions,
                                  const std::string& title) {
    render::ChartSpec chart;
    chart.kind = render::ChartKind::waterfall;
    chart.title = title;
    chart.x_label = "prediction";
    chart.intercept = intercept;
    for (const auto& c : contributions) {
        chart.series.labels.push_back(c.feature);
        chart.series.values.push_back(c.delta);
    }
    return chart;
}

void write_breakdown_outputs(const xai::AttributionReport& attribution, const RunConfig& config,
                             const std::string& out_dir, const std::string& prefix) {
    TextReport report("star-sense break-down attributions");
    report.kv("generated_at", timestamp_value(config));
    report.kv("n_instances", static_cast<long long>(attribution.n_instances));
    report.kv("ordering", attribution.order == xai::BreakDownOrder::by_descending_impact
                              ? "by_descending_impact"
                              : "fixed");
    report.kv("intercept", attribution.intercept, 6);
    report.kv("mean_final_prediction", attribution.mean_final, 6);
    report.line("# per-instance attributions follow; the mean aggregation averages deltas per feature");

    for (std::size_t i = 0; i < attribution.per_instance.size(); ++i) {
        const auto& inst = attribution.per_instance[i];
        std::vector<std::vector<std::string>> rows;
        for (const auto& c : inst.contributions)
            rows.push_back({c.feature, fmt_fixed(c.value, 6), fmt_fixed(c.delta, 6)});
        rows.push_back({"final_prediction", "", fmt_fixed(inst.final_prediction, 6)});
        report.table("instance_" + std::to_string(i), {"feature", "value", "delta"}, rows);
    }

    std::vector<std::vector<std::string>> mean_rows;
    for (const auto& c : attribution.mean_contributions)
        mean_rows.push_back({c.feature, fmt_fixed(c.value, 6), fmt_fixed(c.delta, 6)});
    report.table("mean_attribution", {"feature", "mean_value", "mean_delta"}, mean_rows);
    report.save(join_path(out_dir, prefix + "_breakdown.txt"));

    auto grouped = xai::group_tail_contributions(attribution.mean_contributions, 8);
    render::save_chart(
        waterfall_chart(attribution.intercept, grouped,
                        "Mean local attributions (n = " + std::to_string(attribution.n_instances) + ")"),
        join_path(out_dir, prefix + "_breakdown_mean.svg"));
    for (std::size_t i = 0; i < attribution.per_instance.size(); ++i) {
        auto inst_grouped = xai::group_tail_contributions(attribution.per_instance[i].contributions, 8);
        render::save_chart(waterfall_chart(attribution.intercept, inst_grouped,
                                           "Local attributions, instance " + std::to_string(i)),
                           join_path(out_dir, prefix + "_breakdown_instance_" + std::to_string(i) + ".svg"));
    }
}

void write_pdp_outputs(const models::TrainedModel& model, const Matrix& data, const RunConfig& config,
                       const std::string& out_dir, const std::string& prefix) {
    Matrix pdp_data = cap_rows(data, 500, config.seed);
    std::vector<xai::PdpCurve> curves;
    for (std::size_t j : pdp_feature_indices(model.feature_names())) {
        try {
            curves.push_back(xai::partial_dependence(model, j, pdp_data, config.pdp_grid,
                                                     model.feature_names()[j]));
        } catch (const ConstantFeatureError&) {
            // constant in this sample: nothing to plot
        }
    }

    TextReport report("star-sense partial dependence");
    report.kv("generated_at", timestamp_value(config));
    report.kv("grid_size", static_cast<long long>(config.pdp_grid));
    report.kv("rows_used", static_cast<long long>(pdp_data.rows()));
    for (const auto& curve : curves) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t g = 0; g < curve.grid.size(); ++g)
            rows.push_back({fmt_double(curve.grid[g]), fmt_fixed(curve.pd_values[g], 6)});
        report.table("pdp " + curve.feature, {"grid", "pd"}, rows);
        report.kv(curve.feature + ".slope", curve.slope, 6);
    }

    auto mismatches = xai::detect_sign_mismatch(curves, config.expected_signs, config.flat_tol);
    report.section("sign mismatches");
    report.kv("flat_tol", config.flat_tol, 9);
    if (mismatches.empty()) {
        report.line("none: every fitted slope matches its expected sign");
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& m : mismatches)
            rows.push_back({m.feature, m.kind, fmt_fixed(m.slope, 6), m.expected});
        report.table("mismatches", {"feature", "kind", "slope", "expected_sign"}, rows);
    }
    report.save(join_path(out_dir, prefix + "_pdp.txt"));

    render::ChartSpec chart;
    chart.kind = render::ChartKind::line_grid;
    chart.title = "Partial dependence";
    for (const auto& curve : curves) chart.panels.push_back({curve.feature, curve.grid, curve.pd_values});
    if (!chart.panels.empty())
        render::save_chart(chart, join_path(out_dir, prefix + "_pdp.svg"));
}

// Instance files may be feature-matrix CSVs (__target__ ignored) or plain
// feature columns; either way columns are matched to the model by name.
Matrix load_instances_csv(const std::string& path, const std::vector<std::string>& feature_names) {
    CsvData csv = read_csv(path);
    std::vector<std::size_t> source(feature_names.size());
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
        auto it = std::find(csv.header.begin(), csv.header.end(), feature_names[j]);
        if (it == csv.header.end())
            throw MissingColumnError("instances csv lacks feature column " + feature_names[j]);
        source[j] = static_cast<std::size_t>(it - csv.header.begin());
    }
    Matrix out(csv.rows.size(), feature_names.size());
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        for (std::size_t j = 0; j < feature_names.size(); ++j) {
            auto v = parse_double(csv.rows[i][source[j]]);
            if (!v)
                throw TypeConflictError("instances csv row " + std::to_string(i + 1) + ", column " +
                                        feature_names[j] + ": not a number");
            out(i, j) = *v;
        }
    }
    return out;
}

std::vector<models::ModelSpec> specs_from_config(const RunConfig& config, models::Task task) {
    std::vector<models::ModelSpec> specs;
    for (const auto& name : config.algorithms) specs.push_back(config.spec_for(name, task));
    return specs;
}

void require_integer_ratings(std::span<const double> y) {
    for (double v : y)
        if (v != std::floor(v) || v < 1.0 || v > 5.0)
            throw NonIntegerTargetError("target is not convertible to five classes: " + fmt_double(v));
}

Matrix instance_matrix(const features::FeatureMatrix& fm, std::span<const std::size_t> rows,
                       std::size_t count) {
    const std::size_t n = std::min(count, rows.size());
    Matrix out(n, fm.n_cols());
    for (std::size_t i = 0; i < n; ++i) {
        auto src = fm.x.row(rows[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

}  // namespace

void cmd_ingest(const IngestArgs& args, const RunConfig& config) {
    if (args.input.empty() || args.output.empty()) throw ConfigError("ingest needs --input and --output");
    require_file(args.input, "input file");
    ingest::PipelineLog log;
    ingest::ReviewTable raw = ingest::load_reviews(args.input, {}, &log);
    std::size_t screen_rows = 0;
    auto verdict = screen_do_recommend(raw, config.leakage_threshold, &screen_rows);

    ingest::PreprocessOptions options;
    options.sparse_threshold = config.sparse_threshold;
    ingest::ReviewTable cleaned = ingest::preprocess(std::move(raw), options, log);
    write_csv(args.output, cleaned.to_csv());

    if (!args.report_path.empty()) {
        Pipeline pipe;
        pipe.table = std::move(cleaned);
        pipe.log = std::move(log);
        pipe.stats = ingest::descriptive_stats(pipe.table);
        pipe.prescreen_verdict = verdict;
        pipe.prescreen_rows = screen_rows;
        write_ingest_report(pipe, config, args.report_path);
    }
}

void cmd_featurize(const FeaturizeArgs& args, const RunConfig& config) {
    if (args.input.empty() || args.output.empty())
        throw ConfigError("featurize needs --input and --output");
    if (config.lexicon.empty()) throw ConfigError("featurize needs --lexicon");
    require_file(args.input, "input file");
    require_file(config.lexicon, "lexicon file");

    auto lexicon = sentiment::load_lexicon(config.lexicon);
    auto table = ingest::load_reviews(args.input);
    auto mode = config.score_mode == "count" ? sentiment::ScoreMode::count : sentiment::ScoreMode::rate;
    auto scored = sentiment::score_table(table, config.text_column, lexicon, mode);

    CsvData csv = read_csv(args.input);
    for (const auto& category : sentiment::category_names()) {
        if (std::find(csv.header.begin(), csv.header.end(), category) != csv.header.end())
            throw ConfigError("input already has a column named " + category);
        csv.header.push_back(category);
    }
    for (std::size_t i = 0; i < csv.rows.size(); ++i)
        for (std::size_t j = 0; j < sentiment::kNumCategories; ++j)
            csv.rows[i].push_back(fmt_double(scored.scores(i, j)));
    write_csv(args.output, csv);

    if (!args.matrix_output.empty()) {
        auto fm = features::assemble(table, scored.scores);
        features::save_feature_csv(fm, args.matrix_output);
    }
}

void cmd_train(const TrainArgs& args, const RunConfig& config) {
    if (args.features.empty()) throw ConfigError("train needs --features");
    require_file(args.features, "feature csv");
    auto fm = features::load_feature_csv(args.features);
    auto spec = config.spec_for(args.algorithm, models::task_from_string(args.task));
    auto model = models::train(spec, fm);
    models::save_model(*model, args.out);
}

void cmd_bench(const BenchArgs& args, const RunConfig& config) {
    if (args.features.empty()) throw ConfigError("bench needs --features");
    require_file(args.features, "feature csv");
    auto fm = features::load_feature_csv(args.features);
    const auto task = models::task_from_string(args.task);
    if (task == models::Task::classification) require_integer_ratings(fm.y);

    bench::BenchProtocol protocol{config.holdout, config.folds, config.seed, true};
    auto result = bench::run_benchmark(specs_from_config(config, task), fm, protocol);
    ensure_dir(config.out_dir);
    const std::string stem = task == models::Task::regression ? "bench_regression" : "bench_classification";
    write_benchmark_report(result, config, join_path(config.out_dir, stem + ".txt"));
    render::save_chart(benchmark_chart(result, "Benchmarking results, n = " + std::to_string(fm.n_rows())),
                       join_path(config.out_dir, stem + ".svg"));
}

void cmd_explain(const ExplainArgs& args, const RunConfig& config) {
    if (args.model.empty() || args.features.empty())
        throw ConfigError("explain needs --model and --features");
    require_file(args.model, "model file");
    require_file(args.features, "feature csv");
    if (!args.instances.empty()) require_file(args.instances, "instances csv");
    auto model = models::load_model(args.model);
    auto fm = features::load_feature_csv(args.features);
    if (fm.feature_names != model->feature_names())
        throw DimensionMismatchError("feature CSV columns do not match the model's feature names");

    RunConfig effective = config;
    if (!args.signs.empty()) effective.expected_signs = parse_signs_file(args.signs);
    ensure_dir(effective.out_dir);

    Matrix instances;
    if (!args.instances.empty()) {
        instances = load_instances_csv(args.instances, model->feature_names());
    } else {
        const std::size_t n = std::min<std::size_t>(config.n_instances, fm.n_rows());
        instances = Matrix(n, fm.n_cols());
        for (std::size_t i = 0; i < n; ++i) {
            auto src = fm.x.row(i);
            std::copy(src.begin(), src.end(), instances.row(i).begin());
        }
    }

    if (args.method == "importance") {
        write_importance_outputs(*model, fm.x, fm.y, effective, effective.out_dir, "explain");
    } else if (args.method == "breakdown") {
        xai::BreakDownOptions options;
        options.background_cap = effective.background_cap;
        options.seed = effective.seed;
        auto attribution = xai::break_down(*model, instances, fm.x, model->feature_names(), options);
        write_breakdown_outputs(attribution, effective, effective.out_dir, "explain");
    } else if (args.method == "pdp") {
        write_pdp_outputs(*model, fm.x, effective, effective.out_dir, "explain");
    } else {
        throw ConfigError("unknown explain method: " + args.method +
                          " (expected importance, breakdown or pdp)");
    }
}

void cmd_study1(const RunConfig& config) {
    Pipeline pipe = run_pipeline(config);
    ensure_dir(config.out_dir);
    write_ingest_report(pipe, config, join_path(config.out_dir, "ingest_report.txt"));

    bench::BenchProtocol protocol{config.holdout, config.folds, config.seed, true};
    auto result = bench::run_benchmark(specs_from_config(config, models::Task::regression), pipe.fm,
                                       protocol);
    write_benchmark_report(result, config, join_path(config.out_dir, "study1_benchmark.txt"));
    render::save_chart(
        benchmark_chart(result, "Benchmarking results (regression), n = " + std::to_string(pipe.fm.n_rows())),
        join_path(config.out_dir, "study1_benchmark.svg"));
}

void cmd_study2(const RunConfig& config) {
    Pipeline pipe = run_pipeline(config);
    ensure_dir(config.out_dir);

    auto split = bench::split_holdout(pipe.fm, models::Task::regression, config.holdout, config.seed);
    auto train_fm = bench::subset(pipe.fm, split.train_indices);
    auto test_fm = bench::subset(pipe.fm, split.test_indices);
    auto model = models::train(config.spec_for(config.explain_algorithm, models::Task::regression),
                               train_fm);

    write_importance_outputs(*model, test_fm.x, test_fm.y, config, config.out_dir, "study2");

    Matrix instances = instance_matrix(pipe.fm, split.test_indices, config.n_instances);
    xai::BreakDownOptions options;
    options.background_cap = config.background_cap;
    options.seed = config.seed;
    auto attribution = xai::break_down(*model, instances, train_fm.x, model->feature_names(), options);
    write_breakdown_outputs(attribution, config, config.out_dir, "study2");

    write_pdp_outputs(*model, train_fm.x, config, config.out_dir, "study2");
}

void cmd_study3(const RunConfig& config) {
    Pipeline pipe = run_pipeline(config);
    require_integer_ratings(pipe.fm.y);
    ensure_dir(config.out_dir);

    bench::BenchProtocol protocol{config.holdout, config.folds, config.seed, true};
    auto result = bench::run_benchmark(specs_from_config(config, models::Task::classification), pipe.fm,
                                       protocol);
    write_benchmark_report(result, config, join_path(config.out_dir, "study3_benchmark.txt"));
    render::save_chart(
        benchmark_chart(result,
                        "Benchmarking results (classification), n = " + std::to_string(pipe.fm.n_rows())),
        join_path(config.out_dir, "study3_benchmark.svg"));
}

void cmd_report(const ReportArgs& args, const RunConfig& config) {
    if (args.from.empty() || args.out.empty()) throw ConfigError("report needs --from and --out");
    require_file(args.from, "benchmark report");
    std::ifstream in(args.from, std::ios::binary);
    if (!in) throw IoError("cannot open " + args.from);

    render::ChartSpec chart;
    chart.kind = render::ChartKind::bar_h;
    chart.title = "Benchmark";
    chart.x_label = "metric";

    std::string line;
    bool in_table = false;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.rfind("[table benchmark]", 0) == 0) {
            in_table = true;
            continue;
        }
        if (!in_table) continue;
        if (line.rfind("[/table]", 0) == 0) break;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        auto bar = line.find(" | ");
        if (bar == std::string::npos) continue;
        std::string name = line.substr(0, bar);
        auto rest = line.substr(bar + 3);
        auto bar2 = rest.find(" | ");
        auto value = parse_double(bar2 == std::string::npos ? rest : rest.substr(0, bar2));
        if (!value) continue;
        chart.series.labels.push_back(name);
        chart.series.values.push_back(*value);
    }
    if (chart.series.values.empty())
        throw ConfigError(args.from + " has no [table benchmark] section to render");
    (void)config;
    render::save_chart(chart, args.out);
}

}  // namespace starsense::cli
