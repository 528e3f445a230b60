#include "star_sense/core/text_report.hpp"

#include <fstream>

#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"

namespace starsense {

TextReport::TextReport(const std::string& title) {
    body_ = "# " + title + "\n";
}

void TextReport::kv(const std::string& key, const std::string& value) {
    body_ += key + " = " + value + "\n";
}

void TextReport::kv(const std::string& key, double value, int decimals) {
    kv(key, fmt_fixed(value, decimals));
}

void TextReport::kv(const std::string& key, long long value) {
    kv(key, std::to_string(value));
}

void TextReport::blank() { body_ += "\n"; }

void TextReport::line(const std::string& text) { body_ += text + "\n"; }

void TextReport::section(const std::string& name) {
    body_ += "\n## " + name + "\n";
}

void TextReport::table(const std::string& name, const std::vector<std::string>& columns,
                       const std::vector<std::vector<std::string>>& rows) {
    body_ += "\n[table " + name + "]\n";
    auto emit = [this](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += " | ";
            body_ += cells[i];
        }
        body_ += "\n";
    };
    emit(columns);
    for (const auto& row : rows) emit(row);
    body_ += "[/table]\n";
}

void TextReport::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << body_;
}

}  // namespace starsense
