#include "star_sense/cli/run_config.hpp"

#include <fstream>
#include <sstream>

#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"
#include "star_sense/sentiment/lexicon.hpp"

namespace starsense::cli {

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        values[section.empty() ? key : section + "." + key] = value;
    }
    return values;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

double to_number(const std::string& key, const std::string& value) {
    auto parsed = parse_double(value);
    if (!parsed) throw ConfigError("config key " + key + ": \"" + value + "\" is not a number");
    return *parsed;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string current;
    for (char c : value) {
        if (c == ',') {
            std::string t = trim(current);
            if (!t.empty()) out.push_back(t);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    std::string t = trim(current);
    if (!t.empty()) out.push_back(t);
    return out;
}

}  // namespace

xai::SignExpectation default_expected_signs() {
    xai::SignExpectation expectation;
    for (const char* name : {"joy", "trust", "anticipation", "surprise", "positive"})
        expectation.signs[name] = xai::ExpectedSign::positive;
    for (const char* name : {"anger", "fear", "sadness", "disgust", "negative"})
        expectation.signs[name] = xai::ExpectedSign::negative;
    return expectation;
}

xai::SignExpectation parse_signs_file(const std::string& path) {
    auto values = parse_config_file(path);
    xai::SignExpectation expectation;
    for (const auto& [key, value] : values) {
        if (value == "positive") expectation.signs[key] = xai::ExpectedSign::positive;
        else if (value == "negative") expectation.signs[key] = xai::ExpectedSign::negative;
        else throw ConfigError("signs file: " + key + " must be positive or negative, got \"" + value + "\"");
    }
    return expectation;
}

RunConfig config_from_map(const std::map<std::string, std::string>& values) {
    RunConfig config;
    config.expected_signs = default_expected_signs();

    for (const auto& [key, value] : values) {
        if (key == "paths.input") config.input = value;
        else if (key == "paths.lexicon") config.lexicon = value;
        else if (key == "paths.out_dir") config.out_dir = value;
        else if (key == "protocol.holdout") config.holdout = to_number(key, value);
        else if (key == "protocol.folds") config.folds = static_cast<std::size_t>(to_number(key, value));
        else if (key == "protocol.seed") config.seed = static_cast<std::uint64_t>(to_number(key, value));
        else if (key == "thresholds.sparse") config.sparse_threshold = to_number(key, value);
        else if (key == "thresholds.leakage") config.leakage_threshold = to_number(key, value);
        else if (key == "thresholds.importance_cutoff") config.importance_cutoff = to_number(key, value);
        else if (key == "thresholds.flat_tol") config.flat_tol = to_number(key, value);
        else if (key == "featurize.text_column") config.text_column = value;
        else if (key == "featurize.mode") config.score_mode = value;
        else if (key == "algos.list") config.algorithms = split_list(value);
        else if (key == "study2.algorithm") config.explain_algorithm = value;
        else if (key == "study2.instances") config.n_instances = static_cast<std::size_t>(to_number(key, value));
        else if (key == "study2.importance_repeats")
            config.importance_repeats = static_cast<std::size_t>(to_number(key, value));
        else if (key == "study2.pdp_grid") config.pdp_grid = static_cast<std::size_t>(to_number(key, value));
        else if (key == "study2.background_cap")
            config.background_cap = static_cast<std::size_t>(to_number(key, value));
        else if (key == "run.threads") config.threads = static_cast<int>(to_number(key, value));
        else if (key == "run.fixed_epoch") config.fixed_epoch = to_number(key, value) != 0.0;
        else if (key.starts_with("signs.")) {
            std::string feature = key.substr(6);
            if (value == "positive") config.expected_signs.signs[feature] = xai::ExpectedSign::positive;
            else if (value == "negative") config.expected_signs.signs[feature] = xai::ExpectedSign::negative;
            else throw ConfigError("config key " + key + ": expected positive or negative");
        } else if (key.starts_with("algos.")) {
            // per-algorithm hyperparams: algos.rf.n_trees = 100
            std::string rest = key.substr(6);
            auto dot = rest.find('.');
            if (dot == std::string::npos)
                throw ConfigError("unknown config key: " + key);
            config.hyperparams[rest.substr(0, dot)][rest.substr(dot + 1)] = to_number(key, value);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }

    if (config.holdout <= 0.0 || config.holdout >= 1.0)
        throw ConfigError("protocol.holdout must be in (0, 1)");
    if (config.folds < 2) throw ConfigError("protocol.folds must be >= 2");
    if (config.sparse_threshold < 0.0 || config.sparse_threshold > 1.0)
        throw ConfigError("thresholds.sparse must be in [0, 1]");
    if (config.leakage_threshold <= 0.0 || config.leakage_threshold >= 1.0)
        throw ConfigError("thresholds.leakage must be in (0, 1)");
    if (config.importance_cutoff < 0.0 || config.importance_cutoff > 100.0)
        throw ConfigError("thresholds.importance_cutoff must be in [0, 100]");
    if (config.flat_tol < 0.0) throw ConfigError("thresholds.flat_tol must be >= 0");
    if (config.score_mode != "rate" && config.score_mode != "count")
        throw ConfigError("featurize.mode must be rate or count");
    if (config.n_instances < 1) throw ConfigError("study2.instances must be >= 1");
    if (config.pdp_grid < 2) throw ConfigError("study2.pdp_grid must be >= 2");
    if (config.algorithms.empty()) throw ConfigError("algos.list must not be empty");
    return config;
}

models::ModelSpec RunConfig::spec_for(const std::string& algorithm, models::Task task) const {
    models::ModelSpec spec;
    spec.algorithm = models::algorithm_from_string(algorithm);
    spec.task = task;
    spec.seed = seed;
    auto it = hyperparams.find(algorithm);
    if (it != hyperparams.end()) spec.hyperparams = it->second;
    return spec;
}

}  // namespace starsense::cli
