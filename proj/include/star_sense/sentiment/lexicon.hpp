#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace starsense::sentiment {

// The ten lexicon categories: eight basic emotions plus the two valence
// poles. Order is fixed and shared by every sentiment vector and feature
// matrix in the toolkit.
inline constexpr std::size_t kNumCategories = 10;

enum class Category : std::uint8_t {
    anger,
    anticipation,
    disgust,
    fear,
    joy,
    sadness,
    surprise,
    trust,
    negative,
    positive,
};

const std::array<std::string, kNumCategories>& category_names();
Category category_from_string(const std::string& name);  // UnknownCategoryError

// Term -> category-membership bitmask. Terms are lowercase and contain no
// whitespace.
class Lexicon {
public:
    void add(const std::string& term, Category category);
    bool contains(const std::string& term) const;
    std::uint16_t mask(const std::string& term) const;  // 0 when absent
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, std::uint16_t> entries_;
};

// TSV loader: `term<TAB>category<TAB>flag` per line, flag 0 or 1. Lines with
// flag 0 contribute nothing; duplicates are merged. Blank lines are skipped.
Lexicon load_lexicon(const std::string& path);
Lexicon parse_lexicon(const std::string& text);

}  // namespace starsense::sentiment
