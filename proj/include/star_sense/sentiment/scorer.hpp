#pragma once

#include <array>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/ingest/table.hpp"
#include "star_sense/sentiment/lexicon.hpp"

namespace starsense::sentiment {

// One score per category, in category_names() order. Under rate mode each
// score is matched tokens / total tokens, in [0, 1]; under count mode raw
// match counts.
using SentimentVector = std::array<double, kNumCategories>;

enum class ScoreMode { rate, count };

// Lowercases, then splits on runs of anything that is not an ASCII
// alphanumeric, an apostrophe, or a non-ASCII byte (so non-Latin text forms
// tokens that simply miss a Latin lexicon). Empty tokens are removed.
std::vector<std::string> tokenize(const std::string& text);

SentimentVector score_text(const std::string& text, const Lexicon& lexicon,
                           ScoreMode mode = ScoreMode::rate);

struct TableScores {
    Matrix scores;                   // n_rows x 10, row-aligned with the table
    std::size_t missing_text_rows = 0;
};

// Scores every row of the text column. Rows run in parallel; output is
// row-aligned and identical for any thread count.
TableScores score_table(const ingest::ReviewTable& table, const std::string& text_column,
                        const Lexicon& lexicon, ScoreMode mode = ScoreMode::rate);

}  // namespace starsense::sentiment
