#include <doctest.h>

#include <sstream>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/ingest/preprocess.hpp"
#include "star_sense/sentiment/scorer.hpp"

using namespace starsense;
using namespace starsense::sentiment;

namespace {

std::size_t cat(Category c) { return static_cast<std::size_t>(c); }

Lexicon tiny_lexicon() {
    return parse_lexicon("happy\tjoy\t1\nhappy\tpositive\t1\nsad\tsadness\t1\nsad\tnegative\t1\n");
}

}  // namespace

TEST_CASE("lexicon TSV parsing: flags, duplicates, bad categories, bad lines") {
    auto lex = parse_lexicon("happy\tjoy\t1\n");
    CHECK(lex.size() == 1);
    CHECK(lex.mask("happy") == (1u << cat(Category::joy)));

    CHECK(parse_lexicon("happy\tjoy\t0\n").size() == 0);
    CHECK(parse_lexicon("happy\tjoy\t1\nhappy\tjoy\t1\n").size() == 1);
    CHECK_THROWS_AS(parse_lexicon("happy\telation\t1\n"), UnknownCategoryError);
    CHECK_THROWS_AS(parse_lexicon("happy joy 1\n"), MalformedLineError);
    CHECK_THROWS_AS(parse_lexicon("happy\tjoy\t2\n"), MalformedLineError);
    CHECK_THROWS_AS(parse_lexicon("ha ppy\tjoy\t1\n"), MalformedLineError);

    // terms are lowercased on load
    CHECK(parse_lexicon("HAPPY\tjoy\t1\n").contains("happy"));
}

TEST_CASE("tokenize lowercases, splits on punctuation, keeps apostrophes") {
    CHECK(tokenize("Great product!!") == std::vector<std::string>{"great", "product"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
    CHECK(tokenize("ONE two,Three.four") == std::vector<std::string>{"one", "two", "three", "four"});
    CHECK(tokenize("  \t\n ").empty());
}

TEST_CASE("score_text rate mode: hand-counted oracle") {
    auto lex = tiny_lexicon();
    auto v = score_text("happy happy day", lex, ScoreMode::rate);
    CHECK(v[cat(Category::joy)] == doctest::Approx(2.0 / 3.0));
    CHECK(v[cat(Category::positive)] == doctest::Approx(2.0 / 3.0));
    double rest = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != cat(Category::joy) && i != cat(Category::positive)) rest += v[i];
    CHECK(rest == 0.0);

    auto zeros = score_text("", lex, ScoreMode::rate);
    for (double s : zeros) CHECK(s == 0.0);
    auto nohit = score_text("the quick fox", lex, ScoreMode::rate);
    for (double s : nohit) CHECK(s == 0.0);
}

TEST_CASE("count mode returns raw integer counts; rate stays within [0,1]") {
    auto lex = tiny_lexicon();
    Rng rng(17);
    const char* words[] = {"happy", "sad", "day", "night", "don't"};
    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        const std::size_t len = rng.next_index(12);
        for (std::size_t i = 0; i < len; ++i) {
            text += words[rng.next_index(5)];
            text += " ";
        }
        auto counts = score_text(text, lex, ScoreMode::count);
        auto rates = score_text(text, lex, ScoreMode::rate);
        for (std::size_t i = 0; i < counts.size(); ++i) {
            CHECK(counts[i] == std::floor(counts[i]));
            CHECK(counts[i] >= 0.0);
            CHECK(rates[i] >= 0.0);
            CHECK(rates[i] <= 1.0);
        }
    }
}

TEST_CASE("scoring is a bag of words: token order never matters") {
    auto lex = tiny_lexicon();
    Rng rng(23);
    std::vector<std::string> words = {"happy", "sad", "dog", "cat", "happy"};
    for (int trial = 0; trial < 20; ++trial) {
        shuffle(words, rng);
        std::string text;
        for (const auto& w : words) text += w + " ";
        auto v = score_text(text, lex, ScoreMode::rate);
        CHECK(v[cat(Category::joy)] == doctest::Approx(2.0 / 5.0));
        CHECK(v[cat(Category::sadness)] == doctest::Approx(1.0 / 5.0));
    }
}

TEST_CASE("scoring is invariant to casing") {
    auto lex = tiny_lexicon();
    auto a = score_text("Happy SAD day", lex, ScoreMode::count);
    auto b = score_text("happy sad DAY", lex, ScoreMode::count);
    CHECK(a == b);
}

TEST_CASE("counts are additive over concatenation with a separating space") {
    auto lex = tiny_lexicon();
    const std::string text = "happy sad stuff";
    auto once = score_text(text, lex, ScoreMode::count);
    auto twice = score_text(text + " " + text, lex, ScoreMode::count);
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(twice[i] == 2.0 * once[i]);
}

TEST_CASE("score_table aligns rows, zeroes missing text and counts it") {
    auto table = ingest::table_from_csv(
        parse_csv("reviews.text,reviews.rating\nhappy day,5\n,3\nsad sad,1\n"));
    auto lex = tiny_lexicon();
    auto result = score_table(table, "reviews.text", lex);
    REQUIRE(result.scores.rows() == 3);
    CHECK(result.missing_text_rows == 1);
    CHECK(result.scores(0, cat(Category::joy)) == doctest::Approx(0.5));
    for (std::size_t j = 0; j < kNumCategories; ++j) CHECK(result.scores(1, j) == 0.0);
    CHECK(result.scores(2, cat(Category::sadness)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(score_table(table, "no_such_column", lex), MissingColumnError);
    CHECK_THROWS_AS(score_table(table, "reviews.rating", lex), TypeConflictError);
}

TEST_CASE("three-row table matches hand-computed vectors") {
    // happy -> {joy, positive}; sad -> {sadness, negative}
    auto lex = tiny_lexicon();
    auto table = ingest::table_from_csv(parse_csv(
        "reviews.text\nhappy sad happy home\nnothing here at all\nSAD!\n"));
    auto result = score_table(table, "reviews.text", lex);
    // row 0: 4 tokens, happy x2, sad x1
    CHECK(result.scores(0, cat(Category::joy)) == doctest::Approx(0.5));
    CHECK(result.scores(0, cat(Category::positive)) == doctest::Approx(0.5));
    CHECK(result.scores(0, cat(Category::sadness)) == doctest::Approx(0.25));
    CHECK(result.scores(0, cat(Category::negative)) == doctest::Approx(0.25));
    // row 1: no hits
    for (std::size_t j = 0; j < kNumCategories; ++j) CHECK(result.scores(1, j) == 0.0);
    // row 2: 1 token, sad
    CHECK(result.scores(2, cat(Category::sadness)) == doctest::Approx(1.0));
    CHECK(result.scores(2, cat(Category::negative)) == doctest::Approx(1.0));
}

TEST_CASE("non-latin text scores zero against a latin lexicon") {
    auto lex = tiny_lexicon();
    auto v = score_text("\xE3\x81\x93\xE3\x82\x93 \xE6\x97\xA5", lex, ScoreMode::rate);
    for (double s : v) CHECK(s == 0.0);
}
