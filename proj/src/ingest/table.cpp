#include "star_sense/ingest/table.hpp"

#include <algorithm>

#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"

namespace starsense::ingest {

std::string to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::technical: return "technical";
        case ColumnKind::categorical: return "categorical";
        case ColumnKind::numeric: return "numeric";
        case ColumnKind::text: return "text";
        case ColumnKind::target: return "target";
    }
    return "?";
}

std::string to_string(DropReason reason) {
    switch (reason) {
        case DropReason::technical: return "technical";
        case DropReason::sparse: return "sparse";
        case DropReason::redundant: return "redundant";
        case DropReason::leakage: return "leakage";
    }
    return "?";
}

std::size_t Column::missing_count() const {
    return static_cast<std::size_t>(std::count(missing.begin(), missing.end(), true));
}

double Column::missing_rate() const {
    if (missing.empty()) return 0.0;
    return static_cast<double>(missing_count()) / static_cast<double>(missing.size());
}

bool ReviewTable::has_column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.spec.name == name) return true;
    return false;
}

const Column& ReviewTable::column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.spec.name == name) return c;
    throw MissingColumnError("column not found: " + name);
}

Column& ReviewTable::column(const std::string& name) {
    for (auto& c : columns_)
        if (c.spec.name == name) return c;
    throw MissingColumnError("column not found: " + name);
}

void ReviewTable::add_column(Column col) {
    if (!columns_.empty() && col.size() != n_rows_)
        throw RowMismatchError("column " + col.spec.name + " has " + std::to_string(col.size()) +
                               " rows, table has " + std::to_string(n_rows_));
    if (columns_.empty()) n_rows_ = col.size();
    columns_.push_back(std::move(col));
}

Column ReviewTable::remove_column(const std::string& name) {
    for (auto it = columns_.begin(); it != columns_.end(); ++it) {
        if (it->spec.name == name) {
            Column out = std::move(*it);
            columns_.erase(it);
            return out;
        }
    }
    throw MissingColumnError("column not found: " + name);
}

void ReviewTable::keep_rows(const std::vector<bool>& keep) {
    if (keep.size() != n_rows_) throw RowMismatchError("keep mask length does not match row count");
    std::size_t kept = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
    for (auto& col : columns_) {
        if (col.is_numeric()) {
            std::vector<double> numbers;
            numbers.reserve(kept);
            for (std::size_t i = 0; i < keep.size(); ++i)
                if (keep[i]) numbers.push_back(col.numbers[i]);
            col.numbers = std::move(numbers);
        } else {
            std::vector<std::string> values;
            values.reserve(kept);
            for (std::size_t i = 0; i < keep.size(); ++i)
                if (keep[i]) values.push_back(std::move(col.values[i]));
            col.values = std::move(values);
        }
        std::vector<bool> missing;
        missing.reserve(kept);
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (keep[i]) missing.push_back(col.missing[i]);
        col.missing = std::move(missing);
    }
    n_rows_ = kept;
}

void ReviewTable::record_drop(ColumnSpec spec, DropReason reason) {
    spec.drop_reason = reason;
    dropped_.push_back(std::move(spec));
}

CsvData ReviewTable::to_csv() const {
    CsvData csv;
    for (const auto& c : columns_) csv.header.push_back(c.spec.name);
    csv.rows.assign(n_rows_, std::vector<std::string>(columns_.size()));
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const Column& col = columns_[j];
        for (std::size_t i = 0; i < n_rows_; ++i) {
            if (col.missing[i]) continue;  // missing cells stay empty
            csv.rows[i][j] = col.is_numeric() ? fmt_double(col.numbers[i]) : col.values[i];
        }
    }
    return csv;
}

}  // namespace starsense::ingest
