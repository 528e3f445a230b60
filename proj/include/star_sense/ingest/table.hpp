#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "star_sense/core/csv.hpp"

namespace starsense::ingest {

enum class ColumnKind { technical, categorical, numeric, text, target };
enum class DropReason { technical, sparse, redundant, leakage };

std::string to_string(ColumnKind kind);
std::string to_string(DropReason reason);

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::categorical;
    std::optional<DropReason> drop_reason;
};

// One typed column. Numeric and target columns live in `numbers`; all other
// kinds keep their raw strings. `missing[i]` marks empty or unparseable cells.
struct Column {
    ColumnSpec spec;
    std::vector<std::string> values;   // string kinds
    std::vector<double> numbers;       // numeric kinds
    std::vector<bool> missing;

    bool is_numeric() const {
        return spec.kind == ColumnKind::numeric || spec.kind == ColumnKind::target;
    }
    std::size_t size() const { return missing.size(); }
    std::size_t missing_count() const;
    double missing_rate() const;
};

class ReviewTable {
public:
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return columns_.size(); }

    const std::vector<Column>& columns() const { return columns_; }
    std::vector<Column>& columns() { return columns_; }

    bool has_column(const std::string& name) const;
    const Column& column(const std::string& name) const;  // MissingColumnError if absent
    Column& column(const std::string& name);

    void add_column(Column col);                      // length must match n_rows
    Column remove_column(const std::string& name);    // MissingColumnError if absent
    void keep_rows(const std::vector<bool>& keep);    // row filter, preserves order

    // Columns removed by preprocessing steps, with their drop reasons.
    const std::vector<ColumnSpec>& dropped_columns() const { return dropped_; }
    void record_drop(ColumnSpec spec, DropReason reason);

    CsvData to_csv() const;

private:
    friend ReviewTable table_from_csv(const CsvData&, const std::vector<ColumnSpec>&, bool,
                                      std::vector<std::string>*);
    std::vector<Column> columns_;
    std::vector<ColumnSpec> dropped_;
    std::size_t n_rows_ = 0;
};

struct LevelStat {
    std::string level;
    std::size_t count = 0;
    double percent = 0.0;  // of non-missing cells
};

struct ColumnStats {
    std::string name;
    double missing_rate = 0.0;
    std::vector<LevelStat> levels;  // categorical columns only, descending count
};

struct StatsReport {
    std::size_t n_rows = 0;
    std::vector<ColumnStats> columns;
};

}  // namespace starsense::ingest
