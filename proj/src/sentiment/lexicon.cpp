#include "star_sense/sentiment/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"

namespace starsense::sentiment {

const std::array<std::string, kNumCategories>& category_names() {
    static const std::array<std::string, kNumCategories> names = {
        "anger", "anticipation", "disgust", "fear",     "joy",
        "sadness", "surprise",   "trust",   "negative", "positive"};
    return names;
}

Category category_from_string(const std::string& name) {
    const auto& names = category_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Category>(i);
    throw UnknownCategoryError("unknown lexicon category: " + name);
}

void Lexicon::add(const std::string& term, Category category) {
    entries_[term] |= static_cast<std::uint16_t>(1u << static_cast<unsigned>(category));
}

bool Lexicon::contains(const std::string& term) const {
    return entries_.find(term) != entries_.end();
}

std::uint16_t Lexicon::mask(const std::string& term) const {
    auto it = entries_.find(term);
    return it == entries_.end() ? 0 : it->second;
}

Lexicon parse_lexicon(const std::string& text) {
    Lexicon lex;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab1 = line.find('\t');
        std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos)
            throw MalformedLineError("lexicon line " + std::to_string(line_no) +
                                     ": expected term<TAB>category<TAB>flag");
        std::string term = line.substr(0, tab1);
        std::string category = line.substr(tab1 + 1, tab2 - tab1 - 1);
        std::string flag = trim(line.substr(tab2 + 1));
        if (term.empty() || term.find_first_of(" \t") != std::string::npos)
            throw MalformedLineError("lexicon line " + std::to_string(line_no) +
                                     ": term must be non-empty without whitespace");
        if (flag != "0" && flag != "1")
            throw MalformedLineError("lexicon line " + std::to_string(line_no) + ": flag must be 0 or 1");
        Category cat = category_from_string(category);  // raises UnknownCategoryError
        if (flag == "1") lex.add(to_lower_ascii(term), cat);
    }
    return lex;
}

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_lexicon(ss.str());
}

}  // namespace starsense::sentiment
