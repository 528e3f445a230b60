#include "star_sense/ingest/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"

namespace starsense::ingest {

StepRecord& PipelineLog::begin_step(const std::string& name, std::size_t rows) {
    steps.push_back(StepRecord{name, rows, rows, {}, {}});
    return steps.back();
}

void PipelineLog::note(const std::string& text) {
    if (steps.empty()) begin_step("notes", 0);
    steps.back().notes.push_back(text);
}

const std::vector<std::string>& technical_column_names() {
    static const std::vector<std::string> names = {
        "id",          "dateAdded",       "dateUpdated",       "name",
        "asins",       "imageURLs",       "keys",              "reviews.date",
        "reviews.dateSeen", "reviews.id", "reviews.sourceURLs", "reviews.username",
        "sourceURLs"};
    return names;
}

std::vector<ColumnSpec> default_review_schema() {
    std::vector<ColumnSpec> schema;
    for (const auto& name : technical_column_names())
        schema.push_back({name, ColumnKind::technical, std::nullopt});
    for (const auto& name : {"brand", "categories", "primaryCategories", "manufacturer",
                             "manufacturerNumber", "reviews.didPurchase", "reviews.doRecommend"})
        schema.push_back({name, ColumnKind::categorical, std::nullopt});
    schema.push_back({"reviews.numHelpful", ColumnKind::numeric, std::nullopt});
    schema.push_back({"reviews.text", ColumnKind::text, std::nullopt});
    schema.push_back({"reviews.title", ColumnKind::text, std::nullopt});
    schema.push_back({"reviews.rating", ColumnKind::target, std::nullopt});
    return schema;
}

namespace {

// Kind lookup for columns not covered by an explicit schema.
std::optional<ColumnKind> known_kind(const std::string& name) {
    for (const auto& spec : default_review_schema())
        if (spec.name == name) return spec.kind;
    return std::nullopt;
}

Column make_column(const ColumnSpec& spec, const CsvData& csv, std::size_t col_index,
                   std::vector<std::string>* type_warnings, bool strict_types) {
    Column col;
    col.spec = spec;
    const std::size_t n = csv.rows.size();
    col.missing.assign(n, false);
    if (spec.kind == ColumnKind::numeric || spec.kind == ColumnKind::target) {
        col.numbers.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cell = csv.rows[i][col_index];
            if (cell.empty()) {
                col.missing[i] = true;
                continue;
            }
            auto parsed = parse_double(cell);
            if (!parsed) {
                if (strict_types)
                    throw TypeConflictError("column " + spec.name + ", row " + std::to_string(i + 1) +
                                            ": cannot parse \"" + cell + "\" as number");
                if (type_warnings)
                    type_warnings->push_back("TypeConflict(" + spec.name + ", row " +
                                             std::to_string(i + 1) + "): \"" + cell + "\" set to missing");
                col.missing[i] = true;
                continue;
            }
            col.numbers[i] = *parsed;
        }
    } else {
        col.values.assign(n, "");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cell = csv.rows[i][col_index];
            if (cell.empty()) col.missing[i] = true;
            else col.values[i] = cell;
        }
    }
    return col;
}

bool all_cells_numeric(const CsvData& csv, std::size_t col_index) {
    bool any = false;
    for (const auto& row : csv.rows) {
        const std::string& cell = row[col_index];
        if (cell.empty()) continue;
        if (!parse_double(cell)) return false;
        any = true;
    }
    return any;
}

}  // namespace

ReviewTable table_from_csv(const CsvData& csv, const std::vector<ColumnSpec>& schema,
                           bool strict_types, std::vector<std::string>* type_warnings) {
    std::map<std::string, std::size_t> header_index;
    for (std::size_t j = 0; j < csv.header.size(); ++j) header_index[csv.header[j]] = j;

    std::map<std::string, ColumnSpec> by_name;
    for (const auto& spec : schema) {
        if (header_index.find(spec.name) == header_index.end())
            throw MissingColumnError("schema column not in file: " + spec.name);
        by_name[spec.name] = spec;
    }

    ReviewTable table;
    for (std::size_t j = 0; j < csv.header.size(); ++j) {
        const std::string& name = csv.header[j];
        ColumnSpec spec;
        auto it = by_name.find(name);
        if (it != by_name.end()) {
            spec = it->second;
        } else if (auto kind = known_kind(name)) {
            spec = {name, *kind, std::nullopt};
        } else {
            spec = {name, all_cells_numeric(csv, j) ? ColumnKind::numeric : ColumnKind::categorical,
                    std::nullopt};
        }
        table.add_column(make_column(spec, csv, j, type_warnings, strict_types));
    }
    table.n_rows_ = csv.rows.size();
    return table;
}

ReviewTable load_reviews(const std::string& path, const std::vector<ColumnSpec>& schema, PipelineLog* log) {
    CsvData csv = read_csv(path);
    std::vector<std::string> warnings;
    ReviewTable table = table_from_csv(csv, schema, false, &warnings);
    if (log) {
        auto& step = log->begin_step("load", table.n_rows());
        step.notes.push_back("columns = " + std::to_string(table.n_cols()));
        for (auto& w : warnings) step.notes.push_back(w);
    }
    return table;
}

ReviewTable drop_technical_columns(ReviewTable t, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("drop_technical", t.n_rows()) : nullptr;
    std::vector<std::string> to_drop;
    for (const auto& col : t.columns()) {
        bool listed = std::find(technical_column_names().begin(), technical_column_names().end(),
                                col.spec.name) != technical_column_names().end();
        if (listed || col.spec.kind == ColumnKind::technical) to_drop.push_back(col.spec.name);
    }
    for (const auto& name : to_drop) {
        Column removed = t.remove_column(name);
        t.record_drop(removed.spec, DropReason::technical);
        if (step) step->columns_dropped.push_back(name);
    }
    return t;
}

SparseDropResult drop_sparse_columns(ReviewTable t, double threshold, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("drop_sparse", t.n_rows()) : nullptr;
    SparseDropResult result;
    std::vector<std::string> to_drop;
    for (const auto& col : t.columns()) {
        if (col.spec.kind == ColumnKind::target) continue;
        if (col.missing_rate() > threshold) to_drop.push_back(col.spec.name);
    }
    for (const auto& name : to_drop) {
        double rate = t.column(name).missing_rate();
        Column removed = t.remove_column(name);
        t.record_drop(removed.spec, DropReason::sparse);
        result.dropped.push_back(name);
        if (step) {
            step->columns_dropped.push_back(name);
            step->notes.push_back(name + " missing rate " + fmt_fixed(rate * 100.0, 2) + "%");
        }
    }
    result.table = std::move(t);
    return result;
}

std::string clean_level(const std::string& level) {
    std::string out;
    out.reserve(level.size());
    bool pending_sep = false;
    for (unsigned char c : level) {
        bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (keep) {
            if (pending_sep && !out.empty() && out.back() != '_') out.push_back('_');
            pending_sep = false;
            out.push_back(static_cast<char>(c));
        } else if (c == ' ' || c == '\t' || c == '_') {
            pending_sep = true;  // space runs and literal underscores become one "_"
        }
        // every other character (the {& . , ' " ( ) /} set and anything else
        // outside [A-Za-z0-9_]) is removed
    }
    return out;
}

ReviewTable clean_category_levels(ReviewTable t, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("clean_levels", t.n_rows()) : nullptr;
    for (auto& col : t.columns()) {
        if (col.spec.kind != ColumnKind::categorical) continue;
        std::map<std::string, std::set<std::string>> sources;  // cleaned -> raw inputs
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            if (col.missing[i]) continue;
            std::string cleaned = clean_level(col.values[i]);
            sources[cleaned].insert(col.values[i]);
            col.values[i] = std::move(cleaned);
        }
        if (step) {
            for (const auto& [cleaned, raw] : sources) {
                if (raw.size() > 1) {
                    std::string list;
                    for (const auto& r : raw) list += (list.empty() ? "\"" : ", \"") + r + "\"";
                    step->notes.push_back("CollisionWarning(" + col.spec.name + "): " + list +
                                          " all map to \"" + cleaned + "\"");
                }
            }
        }
    }
    return t;
}

ReviewTable impute_num_helpful(ReviewTable t, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("impute_numHelpful", t.n_rows()) : nullptr;
    Column& col = t.column("reviews.numHelpful");
    std::size_t filled = 0;
    for (std::size_t i = 0; i < col.missing.size(); ++i) {
        if (!col.missing[i]) continue;
        col.numbers[i] = 0.0;
        col.missing[i] = false;
        ++filled;
    }
    if (step) step->notes.push_back(std::to_string(filled) + " missing values set to 0");
    return t;
}

std::map<std::string, std::string> default_rare_category_mapping() {
    return {{"ElectronicsMedia", "Electronics"}, {"ElectronicsFurniture", "Electronics"}};
}

ReviewTable merge_rare_categories(ReviewTable t, const std::map<std::string, std::string>& mapping,
                                  PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("merge_rare", t.n_rows()) : nullptr;
    std::map<std::string, std::size_t> applied;
    for (auto& col : t.columns()) {
        if (col.spec.kind != ColumnKind::categorical) continue;
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            if (col.missing[i]) continue;
            auto it = mapping.find(col.values[i]);
            if (it != mapping.end()) {
                col.values[i] = it->second;
                ++applied[it->first + " -> " + it->second];
            }
        }
    }
    if (step)
        for (const auto& [key, count] : applied)
            step->notes.push_back(key + " (" + std::to_string(count) + " rows)");
    return t;
}

ReviewTable drop_redundant_columns(ReviewTable t, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("drop_redundant", t.n_rows()) : nullptr;
    const std::vector<std::pair<std::string, DropReason>> targets = {
        {"manufacturer", DropReason::redundant},
        {"categories", DropReason::redundant},
        {"manufacturerNumber", DropReason::redundant},
        {"reviews.doRecommend", DropReason::leakage},
    };
    for (const auto& [name, reason] : targets) {
        if (!t.has_column(name)) continue;
        Column removed = t.remove_column(name);
        t.record_drop(removed.spec, reason);
        if (step) {
            step->columns_dropped.push_back(name);
            step->notes.push_back(name + ": " + to_string(reason));
        }
    }
    return t;
}

ReviewTable fill_unknown_categories(ReviewTable t, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("fill_unknown", t.n_rows()) : nullptr;
    std::size_t filled = 0;
    for (auto& col : t.columns()) {
        if (col.spec.kind != ColumnKind::categorical) continue;
        for (std::size_t i = 0; i < col.missing.size(); ++i) {
            if (!col.missing[i]) continue;
            col.values[i] = "unknown";
            col.missing[i] = false;
            ++filled;
        }
    }
    if (step) step->notes.push_back(std::to_string(filled) + " missing categorical cells set to \"unknown\"");
    return t;
}

ReviewTable drop_invalid_rating_rows(ReviewTable t, PipelineLog* log) {
    StepRecord* step = log ? &log->begin_step("drop_invalid_rating", t.n_rows()) : nullptr;
    if (!t.has_column("reviews.rating")) {
        if (step) step->notes.push_back("no reviews.rating column; nothing to filter");
        return t;
    }
    const Column& rating = t.column("reviews.rating");
    std::vector<bool> keep(t.n_rows(), true);
    std::size_t missing = 0, non_integer = 0, out_of_range = 0;
    for (std::size_t i = 0; i < t.n_rows(); ++i) {
        if (rating.missing[i]) {
            keep[i] = false;
            ++missing;
            continue;
        }
        double v = rating.numbers[i];
        if (v != std::floor(v)) {
            keep[i] = false;
            ++non_integer;
        } else if (v < 1.0 || v > 5.0) {
            keep[i] = false;
            ++out_of_range;
        }
    }
    t.keep_rows(keep);
    if (step) {
        step->rows_after = t.n_rows();
        if (missing) step->notes.push_back(std::to_string(missing) + " rows dropped: rating missing");
        if (non_integer) step->notes.push_back(std::to_string(non_integer) + " rows dropped: rating not integer");
        if (out_of_range) step->notes.push_back(std::to_string(out_of_range) + " rows dropped: rating outside 1..5");
    }
    return t;
}

StatsReport descriptive_stats(const ReviewTable& t) {
    StatsReport report;
    report.n_rows = t.n_rows();
    for (const auto& col : t.columns()) {
        ColumnStats stats;
        stats.name = col.spec.name;
        stats.missing_rate = col.missing_rate();
        if (col.spec.kind == ColumnKind::categorical) {
            std::map<std::string, std::size_t> counts;
            std::size_t present = 0;
            for (std::size_t i = 0; i < col.values.size(); ++i) {
                if (col.missing[i]) continue;
                ++counts[col.values[i]];
                ++present;
            }
            for (const auto& [level, count] : counts) {
                LevelStat ls;
                ls.level = level;
                ls.count = count;
                ls.percent = present ? 100.0 * static_cast<double>(count) / static_cast<double>(present) : 0.0;
                stats.levels.push_back(std::move(ls));
            }
            std::stable_sort(stats.levels.begin(), stats.levels.end(),
                             [](const LevelStat& a, const LevelStat& b) {
                                 if (a.count != b.count) return a.count > b.count;
                                 return a.level < b.level;
                             });
        }
        report.columns.push_back(std::move(stats));
    }
    return report;
}

ReviewTable preprocess(ReviewTable t, const PreprocessOptions& options, PipelineLog& log) {
    t = drop_technical_columns(std::move(t), &log);
    t = drop_sparse_columns(std::move(t), options.sparse_threshold, &log).table;
    t = clean_category_levels(std::move(t), &log);
    if (t.has_column("reviews.numHelpful")) {
        t = impute_num_helpful(std::move(t), &log);
    } else {
        log.begin_step("impute_numHelpful", t.n_rows()).notes.push_back("column absent; skipped");
    }
    t = merge_rare_categories(std::move(t), options.rare_mapping, &log);
    t = drop_redundant_columns(std::move(t), &log);
    t = fill_unknown_categories(std::move(t), &log);
    t = drop_invalid_rating_rows(std::move(t), &log);
    return t;
}

}  // namespace starsense::ingest
