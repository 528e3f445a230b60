#include "star_sense/core/csv.hpp"

#include <fstream>
#include <sstream>

#include "star_sense/core/error.hpp"

namespace starsense {

namespace {

// Splits the full text into records of fields, honoring quoted sections.
std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                field_started = true;  // next field exists even if empty
                break;
            case '\r':
                break;  // handled by following \n; lone \r ignored
            case '\n':
                end_record();
                break;
            default:
                field.push_back(c);
                field_started = true;
                break;
        }
    }
    if (in_quotes) throw MalformedLineError("unterminated quoted field at end of input");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

}  // namespace

CsvData parse_csv(const std::string& text) {
    CsvData out;
    auto records = parse_records(text);
    if (records.empty()) throw MalformedLineError("empty CSV: header row required");
    out.header = std::move(records.front());
    const std::size_t width = out.header.size();
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto& rec = records[r];
        if (rec.size() == 1 && rec[0].empty()) continue;  // trailing blank line
        if (rec.size() > width)
            throw MalformedLineError("row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                     " fields, header has " + std::to_string(width));
        rec.resize(width);
        out.rows.push_back(std::move(rec));
    }
    return out;
}

CsvData read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

std::string format_csv_field(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_to_string(const CsvData& data) {
    std::string out;
    auto emit_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += format_csv_field(row[i]);
        }
        out.push_back('\n');
    };
    emit_row(data.header);
    for (const auto& row : data.rows) emit_row(row);
    return out;
}

void write_csv(const std::string& path, const CsvData& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << csv_to_string(data);
}

}  // namespace starsense
