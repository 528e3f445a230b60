#include <iostream>
#include <map>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "star_sense/cli/commands.hpp"
#include "star_sense/cli/run_config.hpp"
#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"

namespace {

using namespace starsense;

// Exception type -> documented exit code (README "Exit codes").
int exit_code_for_error(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 1;
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const MissingColumnError*>(&e) ||
        dynamic_cast<const TypeConflictError*>(&e) || dynamic_cast<const MalformedLineError*>(&e))
        return 2;
    if (dynamic_cast<const UnknownCategoryError*>(&e)) return 3;
    if (dynamic_cast<const RowMismatchError*>(&e) || dynamic_cast<const DimensionMismatchError*>(&e) ||
        dynamic_cast<const NonIntegerTargetError*>(&e) || dynamic_cast<const ConstantVectorError*>(&e))
        return 4;
    if (dynamic_cast<const InvalidHyperparamError*>(&e) || dynamic_cast<const EmptyDataError*>(&e) ||
        dynamic_cast<const SingleClassDataError*>(&e) || dynamic_cast<const TaskMismatchError*>(&e) ||
        dynamic_cast<const SerializationError*>(&e))
        return 5;
    if (dynamic_cast<const TooFewRowsError*>(&e) || dynamic_cast<const LengthMismatchError*>(&e) ||
        dynamic_cast<const EmptyInputError*>(&e))
        return 6;
    if (dynamic_cast<const UnsupportedModelError*>(&e) || dynamic_cast<const EmptyBackgroundError*>(&e) ||
        dynamic_cast<const ConstantFeatureError*>(&e))
        return 7;
    if (dynamic_cast<const NonFiniteValueError*>(&e)) return 8;
    return 9;
}

struct GlobalFlags {
    std::string config_path;
    long long seed = -1;
    int threads = 0;
    bool fixed_epoch = false;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"star-sense: emotion features, rating models and model explanations for product reviews"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand name

    GlobalFlags global;
    app.add_option("--config", global.config_path, "flat key/value config file ([section] headers)");
    app.add_option("--seed", global.seed, "global random seed (overrides config)");
    app.add_option("--threads", global.threads, "worker thread count (0 = library default)");
    app.add_flag("--fixed-epoch", global.fixed_epoch,
                 "freeze timestamps and wall times for byte-reproducible reports");

    // shared option targets
    cli::IngestArgs ingest_args;
    cli::FeaturizeArgs featurize_args;
    cli::TrainArgs train_args;
    cli::BenchArgs bench_args;
    cli::ExplainArgs explain_args;
    cli::ReportArgs report_args;
    std::string input, lexicon, out_dir, text_col, mode, algos;
    double sparse = -1.0, holdout = -1.0;
    long long folds = -1, instances = -1;

    auto* ingest = app.add_subcommand("ingest", "clean a raw review CSV");
    ingest->add_option("--input", ingest_args.input)->required();
    ingest->add_option("--output", ingest_args.output)->required();
    ingest->add_option("--sparse-threshold", sparse, "missing-rate cutoff for column removal");
    ingest->add_option("--report", ingest_args.report_path, "write the row ledger and statistics here");

    auto* featurize = app.add_subcommand("featurize", "append the 10 sentiment columns");
    featurize->add_option("--input", featurize_args.input)->required();
    featurize->add_option("--output", featurize_args.output)->required();
    featurize->add_option("--lexicon", lexicon, "emotion lexicon TSV");
    featurize->add_option("--text-col", text_col, "text column to score");
    featurize->add_option("--mode", mode, "rate or count");
    featurize->add_option("--matrix-out", featurize_args.matrix_output,
                          "also write the assembled feature matrix CSV");

    auto* train = app.add_subcommand("train", "train one model on a feature matrix CSV");
    train->add_option("--algo", train_args.algorithm, "knn|cart|rf|gbm|xgb|svm_linear|svm_rbf");
    train->add_option("--task", train_args.task, "regression|classification");
    train->add_option("--features", train_args.features)->required();
    train->add_option("--out", train_args.out, "model file to write");

    auto* bench = app.add_subcommand("bench", "benchmark the algorithm roster");
    bench->add_option("--task", bench_args.task, "regression|classification");
    bench->add_option("--features", bench_args.features)->required();
    bench->add_option("--algos", algos, "comma-separated algorithm list");
    bench->add_option("--holdout", holdout, "hold-out fraction");
    bench->add_option("--folds", folds, "cross-validation folds");
    bench->add_option("--out-dir", out_dir, "report directory");

    auto* explain = app.add_subcommand("explain", "explain a trained model");
    explain->add_option("--model", explain_args.model)->required();
    explain->add_option("--features", explain_args.features)->required();
    explain->add_option("--instances", explain_args.instances, "CSV of rows to explain (breakdown)");
    explain->add_option("--method", explain_args.method, "importance|breakdown|pdp");
    explain->add_option("--expected-signs", explain_args.signs, "signs.cfg for the mismatch detector");
    explain->add_option("--out-dir", out_dir, "report directory");

    auto* study1 = app.add_subcommand("study1", "regression benchmark over the full pipeline");
    auto* study2 = app.add_subcommand("study2", "global + local explanations of the chosen model");
    auto* study3 = app.add_subcommand("study3", "classification benchmark with imbalance diagnostics");
    for (CLI::App* study : {study1, study2, study3}) {
        study->add_option("--input", input, "raw review CSV");
        study->add_option("--lexicon", lexicon, "emotion lexicon TSV");
        study->add_option("--out-dir", out_dir, "report directory");
        study->add_option("--holdout", holdout, "hold-out fraction");
        study->add_option("--folds", folds, "cross-validation folds");
        study->add_option("--algos", algos, "comma-separated algorithm list");
    }
    study2->add_option("--instances", instances, "number of unseen observations to attribute");

    auto* report = app.add_subcommand("report", "re-render an SVG chart from a benchmark report");
    report->add_option("--from", report_args.from)->required();
    report->add_option("--out", report_args.out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        std::map<std::string, std::string> values;
        if (!global.config_path.empty()) values = cli::parse_config_file(global.config_path);
        if (global.seed >= 0) values["protocol.seed"] = std::to_string(global.seed);
        if (global.threads > 0) values["run.threads"] = std::to_string(global.threads);
        if (global.fixed_epoch) values["run.fixed_epoch"] = "1";
        if (!input.empty()) values["paths.input"] = input;
        if (!lexicon.empty()) values["paths.lexicon"] = lexicon;
        if (!out_dir.empty()) values["paths.out_dir"] = out_dir;
        if (!text_col.empty()) values["featurize.text_column"] = text_col;
        if (!mode.empty()) values["featurize.mode"] = mode;
        if (!algos.empty()) values["algos.list"] = algos;
        if (sparse >= 0.0) values["thresholds.sparse"] = fmt_double(sparse);
        if (holdout > 0.0) values["protocol.holdout"] = fmt_double(holdout);
        if (folds >= 2) values["protocol.folds"] = std::to_string(folds);
        if (instances >= 1) values["study2.instances"] = std::to_string(instances);

        cli::RunConfig config = cli::config_from_map(values);
#ifdef _OPENMP
        if (config.threads > 0) omp_set_num_threads(config.threads);
#endif

        if (ingest->parsed()) cli::cmd_ingest(ingest_args, config);
        else if (featurize->parsed()) cli::cmd_featurize(featurize_args, config);
        else if (train->parsed()) cli::cmd_train(train_args, config);
        else if (bench->parsed()) cli::cmd_bench(bench_args, config);
        else if (explain->parsed()) cli::cmd_explain(explain_args, config);
        else if (study1->parsed()) cli::cmd_study1(config);
        else if (study2->parsed()) cli::cmd_study2(config);
        else if (study3->parsed()) cli::cmd_study3(config);
        else if (report->parsed()) cli::cmd_report(report_args, config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for_error(e);
    }
    return 0;
}
