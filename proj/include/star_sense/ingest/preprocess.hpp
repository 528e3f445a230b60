#pragma once

#include <map>
#include <string>
#include <vector>

#include "star_sense/ingest/table.hpp"

namespace starsense::ingest {

// Audit trail of the preprocessing chain: one record per step with row
// counts, removed columns and free-form notes, so the gap between raw and
// final sample sizes is accountable.
struct StepRecord {
    std::string step;
    std::size_t rows_before = 0;
    std::size_t rows_after = 0;
    std::vector<std::string> columns_dropped;
    std::vector<std::string> notes;
};

struct PipelineLog {
    std::vector<StepRecord> steps;
    StepRecord& begin_step(const std::string& name, std::size_t rows);
    void note(const std::string& text);
};

// The review schema the toolkit understands out of the box. Extra columns in
// an input file are typed by inference (numeric if every non-empty cell
// parses, categorical otherwise).
std::vector<ColumnSpec> default_review_schema();

// Columns removed as technical metadata.
const std::vector<std::string>& technical_column_names();

ReviewTable load_reviews(const std::string& path, const std::vector<ColumnSpec>& schema = {},
                         PipelineLog* log = nullptr);
ReviewTable table_from_csv(const CsvData& csv, const std::vector<ColumnSpec>& schema = {},
                           bool strict_types = false, std::vector<std::string>* type_warnings = nullptr);

ReviewTable drop_technical_columns(ReviewTable t, PipelineLog* log = nullptr);

struct SparseDropResult {
    ReviewTable table;
    std::vector<std::string> dropped;
};
SparseDropResult drop_sparse_columns(ReviewTable t, double threshold = 0.95, PipelineLog* log = nullptr);

// Removes {& . , ' " ( ) /}, turns space runs into "_", collapses repeated
// "_", trims edge "_". Collisions between distinct input levels are warnings,
// not errors.
std::string clean_level(const std::string& level);
ReviewTable clean_category_levels(ReviewTable t, PipelineLog* log = nullptr);

ReviewTable impute_num_helpful(ReviewTable t, PipelineLog* log = nullptr);

std::map<std::string, std::string> default_rare_category_mapping();
ReviewTable merge_rare_categories(ReviewTable t,
                                  const std::map<std::string, std::string>& mapping = default_rare_category_mapping(),
                                  PipelineLog* log = nullptr);

ReviewTable drop_redundant_columns(ReviewTable t, PipelineLog* log = nullptr);

// Missing categorical cells become the level "unknown"; rows with a missing
// or non-integer rating are dropped (counted in the log).
ReviewTable fill_unknown_categories(ReviewTable t, PipelineLog* log = nullptr);
ReviewTable drop_invalid_rating_rows(ReviewTable t, PipelineLog* log = nullptr);

StatsReport descriptive_stats(const ReviewTable& t);

struct PreprocessOptions {
    double sparse_threshold = 0.95;
    std::map<std::string, std::string> rare_mapping = default_rare_category_mapping();
};

// Full cleaning chain in paper order. Idempotent: running it on its own
// output changes nothing.
ReviewTable preprocess(ReviewTable t, const PreprocessOptions& options, PipelineLog& log);

}  // namespace starsense::ingest
