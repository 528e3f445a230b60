#pragma once

#include <string>
#include <vector>

namespace starsense {

// Raw CSV contents: header row plus string cells. Missing values are empty
// strings; typing happens downstream.
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader: quoted fields, escaped quotes, embedded commas and
// newlines. Accepts both \n and \r\n line endings. Rows shorter than the
// header are padded with empty cells; longer rows raise MalformedLineError.
CsvData read_csv(const std::string& path);
CsvData parse_csv(const std::string& text);

// Writer quotes a field only when it contains a comma, quote, CR or LF.
// Lines end with \n so output bytes are stable across platforms.
std::string format_csv_field(const std::string& field);
void write_csv(const std::string& path, const CsvData& data);
std::string csv_to_string(const CsvData& data);

}  // namespace starsense
