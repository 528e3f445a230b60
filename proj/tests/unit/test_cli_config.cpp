#include <doctest.h>

#include "star_sense/cli/run_config.hpp"
#include "star_sense/core/error.hpp"

using namespace starsense;
using namespace starsense::cli;

TEST_CASE("config text parses sections, comments and keys") {
    auto values = parse_config_text(
        "# comment\n[paths]\ninput = a.csv\n\n[protocol]\nseed = 7\nholdout = 0.3\n");
    CHECK(values.at("paths.input") == "a.csv");
    CHECK(values.at("protocol.seed") == "7");
    CHECK_THROWS_AS(parse_config_text("[broken\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[s]\nno_equals_here\n"), ConfigError);
}

TEST_CASE("config map builds a validated RunConfig") {
    auto config = config_from_map({{"paths.input", "in.csv"},
                                   {"protocol.seed", "9"},
                                   {"protocol.holdout", "0.25"},
                                   {"algos.list", "rf, cart"},
                                   {"algos.rf.n_trees", "25"},
                                   {"signs.joy", "positive"},
                                   {"study2.instances", "3"}});
    CHECK(config.input == "in.csv");
    CHECK(config.seed == 9);
    CHECK(config.holdout == 0.25);
    CHECK(config.algorithms == std::vector<std::string>{"rf", "cart"});
    CHECK(config.hyperparams.at("rf").at("n_trees") == 25.0);
    CHECK(config.n_instances == 3);

    auto spec = config.spec_for("rf", models::Task::regression);
    CHECK(spec.algorithm == models::Algorithm::random_forest);
    CHECK(spec.seed == 9);
    CHECK(spec.hyperparams.at("n_trees") == 25.0);
}

TEST_CASE("config validation rejects out-of-range values and unknown keys") {
    CHECK_THROWS_AS(config_from_map({{"protocol.holdout", "1.5"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"protocol.folds", "1"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"thresholds.sparse", "2"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"featurize.mode", "median"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"no.such.key", "1"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"protocol.seed", "abc"}}), ConfigError);
    CHECK_THROWS_AS(config_from_map({{"signs.joy", "sideways"}}), ConfigError);
}

TEST_CASE("default expected signs cover all ten sentiment features") {
    auto signs = default_expected_signs();
    CHECK(signs.signs.size() == 10);
    CHECK(signs.signs.at("joy") == xai::ExpectedSign::positive);
    CHECK(signs.signs.at("negative") == xai::ExpectedSign::negative);
}
