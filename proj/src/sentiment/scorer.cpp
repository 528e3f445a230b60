#include "star_sense/sentiment/scorer.hpp"

#include <atomic>

#include "star_sense/core/error.hpp"

namespace starsense::sentiment {

namespace {

inline bool is_token_char(unsigned char c) {
    if (c >= 0x80) return true;  // keep multi-byte sequences intact
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
            current.push_back(static_cast<char>(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

SentimentVector score_text(const std::string& text, const Lexicon& lexicon, ScoreMode mode) {
    SentimentVector scores{};
    const auto tokens = tokenize(text);
    if (tokens.empty()) return scores;
    for (const auto& token : tokens) {
        std::uint16_t mask = lexicon.mask(token);
        while (mask) {
            unsigned bit = static_cast<unsigned>(__builtin_ctz(mask));
            scores[bit] += 1.0;
            mask = static_cast<std::uint16_t>(mask & (mask - 1));
        }
    }
    if (mode == ScoreMode::rate) {
        const double denom = static_cast<double>(tokens.size());
        for (double& s : scores) s /= denom;
    }
    return scores;
}

TableScores score_table(const ingest::ReviewTable& table, const std::string& text_column,
                        const Lexicon& lexicon, ScoreMode mode) {
    const ingest::Column& col = table.column(text_column);
    if (col.is_numeric())
        throw TypeConflictError("column " + text_column + " is numeric, expected text");

    TableScores out;
    const std::size_t n = table.n_rows();
    out.scores = Matrix(n, kNumCategories);
    std::atomic<std::size_t> missing_rows{0};

    // Rows are independent; output slots are disjoint, so any schedule gives
    // identical results.
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (col.missing[idx]) {
            missing_rows.fetch_add(1, std::memory_order_relaxed);
            continue;  // zero vector
        }
        SentimentVector v = score_text(col.values[idx], lexicon, mode);
        for (std::size_t j = 0; j < kNumCategories; ++j) out.scores(idx, j) = v[j];
    }
    out.missing_text_rows = missing_rows.load();
    return out;
}

}  // namespace starsense::sentiment
