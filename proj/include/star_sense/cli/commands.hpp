#pragma once

#include <optional>
#include <string>
#include <vector>

#include "star_sense/cli/run_config.hpp"

namespace starsense::cli {

// Stage tags map to process exit codes (see exit_code_for).
enum class Stage { config = 1, ingest = 2, featurize = 3, assemble = 4, train = 5, bench = 6, explain = 7, report = 8 };

int exit_code_for(Stage stage);

struct IngestArgs {
    std::string input;
    std::string output;
    std::string report_path;
};
void cmd_ingest(const IngestArgs& args, const RunConfig& config);

struct FeaturizeArgs {
    std::string input;
    std::string output;
    std::string matrix_output;  // optional: assembled feature matrix CSV
};
void cmd_featurize(const FeaturizeArgs& args, const RunConfig& config);

struct TrainArgs {
    std::string algorithm = "rf";
    std::string task = "regression";
    std::string features;
    std::string out = "model.bin";
};
void cmd_train(const TrainArgs& args, const RunConfig& config);

struct BenchArgs {
    std::string task = "regression";
    std::string features;
};
void cmd_bench(const BenchArgs& args, const RunConfig& config);

struct ExplainArgs {
    std::string model;
    std::string features;
    std::string instances;  // optional CSV of rows to explain
    std::string method = "importance";  // importance | breakdown | pdp
    std::string signs;                  // optional signs.cfg path
};
void cmd_explain(const ExplainArgs& args, const RunConfig& config);

void cmd_study1(const RunConfig& config);
void cmd_study2(const RunConfig& config);
void cmd_study3(const RunConfig& config);

struct ReportArgs {
    std::string from;  // benchmark report text file
    std::string out;   // SVG path
};
void cmd_report(const ReportArgs& args, const RunConfig& config);

}  // namespace starsense::cli
