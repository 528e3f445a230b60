#include <doctest.h>

#include "star_sense/core/error.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/ingest/preprocess.hpp"

using namespace starsense;
using namespace starsense::ingest;

namespace {

ReviewTable table_of(const std::string& csv_text, const std::vector<ColumnSpec>& schema = {}) {
    return table_from_csv(parse_csv(csv_text), schema);
}

}  // namespace

TEST_CASE("load parses a 3-row csv into typed columns") {
    auto t = table_of("brand,reviews.rating,reviews.text\nAmazon,5,Nice\nAmazon,4,Ok\nAcme,1,Bad\n");
    CHECK(t.n_rows() == 3);
    CHECK(t.column("reviews.rating").is_numeric());
    CHECK(t.column("reviews.rating").numbers[0] == 5.0);
    CHECK(t.column("brand").spec.kind == ColumnKind::categorical);
    CHECK(t.column("reviews.text").spec.kind == ColumnKind::text);
}

TEST_CASE("schema column missing from the file raises MissingColumn") {
    auto schema = std::vector<ColumnSpec>{{"reviews.rating", ColumnKind::target, std::nullopt}};
    CHECK_THROWS_AS(table_of("brand\nAmazon\n", schema), MissingColumnError);
}

TEST_CASE("unparseable numeric cells become missing with a warning") {
    std::vector<std::string> warnings;
    auto t = table_from_csv(parse_csv("reviews.numHelpful,x\n3,a\nxyz,b\n,c\n"), {}, false, &warnings);
    REQUIRE(t.n_rows() == 3);
    const auto& col = t.column("reviews.numHelpful");
    CHECK(col.numbers[0] == 3.0);
    CHECK(col.missing[1]);
    CHECK(col.missing[2]);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("TypeConflict") != std::string::npos);
    CHECK_THROWS_AS(table_from_csv(parse_csv("reviews.numHelpful\nxyz\n"),
                                   {{"reviews.numHelpful", ColumnKind::numeric, std::nullopt}}, true,
                                   nullptr),
                    TypeConflictError);
}

TEST_CASE("unknown columns are typed by inference") {
    auto t = table_of("mystery_number,mystery_label\n1.5,red\n2,blue\n");
    CHECK(t.column("mystery_number").spec.kind == ColumnKind::numeric);
    CHECK(t.column("mystery_label").spec.kind == ColumnKind::categorical);
}

TEST_CASE("drop_technical removes exactly the listed columns") {
    std::string header = "id,dateAdded,dateUpdated,name,asins,imageURLs,keys,reviews.date,"
                         "reviews.dateSeen,reviews.id,reviews.sourceURLs,reviews.username,sourceURLs,brand";
    std::string row = "a,b,c,d,e,f,g,h,i,j,k,l,m,Amazon";
    auto t = drop_technical_columns(table_of(header + "\n" + row + "\n"));
    CHECK(t.n_cols() == 1);
    CHECK(t.has_column("brand"));
    CHECK(t.dropped_columns().size() == 13);
    CHECK(t.dropped_columns()[0].drop_reason == DropReason::technical);

    // no technical columns: identity
    auto t2 = drop_technical_columns(table_of("brand,reviews.rating\nAmazon,5\n"));
    CHECK(t2.n_cols() == 2);

    // only id and brand
    auto t3 = drop_technical_columns(table_of("id,brand\n1,Amazon\n"));
    CHECK(t3.n_cols() == 1);
    CHECK(t3.has_column("brand"));
}

TEST_CASE("drop_sparse removes columns above the threshold, never the target") {
    // 49 of 50 missing = 98% > 95%
    std::string csv = "sparse,dense,reviews.rating\n";
    for (int i = 0; i < 50; ++i)
        csv += std::string(i == 0 ? "1" : "") + "," + std::to_string(i) + ",5\n";
    auto result = drop_sparse_columns(table_of(csv), 0.95);
    CHECK(result.dropped == std::vector<std::string>{"sparse"});
    CHECK(result.table.has_column("dense"));
    CHECK(result.table.has_column("reviews.rating"));

    // 10% missing is kept
    auto r2 = drop_sparse_columns(table_of("x\n\n1\n2\n3\n4\n5\n6\n7\n8\n9\n"), 0.95);
    CHECK(r2.dropped.empty());

    // the target survives even when fully missing
    auto r3 = drop_sparse_columns(table_of("reviews.rating,x\n,1\n,2\n"), 0.5);
    CHECK(r3.table.has_column("reviews.rating"));
    CHECK(r3.dropped.empty());
}

TEST_CASE("clean_level applies the documented character rules") {
    CHECK(clean_level("Toys & Games,Electronics") == "Toys_GamesElectronics");
    CHECK(clean_level("Health & Beauty") == "Health_Beauty");
    CHECK(clean_level("Electronics") == "Electronics");
    CHECK(clean_level("Electronics,Media") == "ElectronicsMedia");
    CHECK(clean_level("a.b,c'd\"e(f)g/h&i") == "abcdefghi");
    CHECK(clean_level("  spaced  out  ") == "spaced_out");
    CHECK(clean_level("a__b") == "a_b");
    CHECK(clean_level("_edge_") == "edge");
}

TEST_CASE("clean_level output is [A-Za-z0-9_] only, for arbitrary bytes") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        const std::size_t len = rng.next_index(18);
        for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(rng.next_index(255) + 1));
        for (char c : clean_level(s)) {
            bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
            CHECK(ok);
        }
    }
}

TEST_CASE("clean_category_levels rewrites levels and logs collisions") {
    PipelineLog log;
    auto t = clean_category_levels(
        table_of("primaryCategories\nHealth & Beauty\n\"Health, Beauty\"\nElectronics\n"), &log);
    CHECK(t.column("primaryCategories").values[0] == "Health_Beauty");
    CHECK(t.column("primaryCategories").values[1] == "Health_Beauty");
    bool collision_logged = false;
    for (const auto& note : log.steps.back().notes)
        if (note.find("CollisionWarning") != std::string::npos) collision_logged = true;
    CHECK(collision_logged);
}

TEST_CASE("impute_num_helpful zeroes exactly the missing cells") {
    auto t = impute_num_helpful(table_of("reviews.numHelpful,other\n3,\n,x\n1,\n"));
    const auto& col = t.column("reviews.numHelpful");
    CHECK(col.numbers == std::vector<double>{3.0, 0.0, 1.0});
    CHECK(col.missing_count() == 0);
    CHECK(t.column("other").missing[0]);  // untouched

    auto t2 = impute_num_helpful(table_of("reviews.numHelpful\n1\n2\n"));
    CHECK(t2.column("reviews.numHelpful").numbers == std::vector<double>{1.0, 2.0});

    CHECK_THROWS_AS(impute_num_helpful(table_of("brand\nAmazon\n")), MissingColumnError);
}

TEST_CASE("merge_rare_categories relabels matching levels") {
    auto t = merge_rare_categories(
        table_of("primaryCategories\nElectronicsMedia\nElectronics\nElectronicsMedia\n"));
    const auto& col = t.column("primaryCategories");
    CHECK(col.values == std::vector<std::string>{"Electronics", "Electronics", "Electronics"});

    // empty mapping is the identity
    auto t2 = merge_rare_categories(table_of("primaryCategories\nA\nB\n"), {});
    CHECK(t2.column("primaryCategories").values == std::vector<std::string>{"A", "B"});

    // mapping may introduce a brand-new level
    auto t3 = merge_rare_categories(table_of("primaryCategories\nA\nB\n"), {{"A", "Fresh"}});
    CHECK(t3.column("primaryCategories").values == std::vector<std::string>{"Fresh", "B"});
}

TEST_CASE("drop_redundant_columns removes the four named columns with reasons") {
    auto t = drop_redundant_columns(
        table_of("manufacturer,categories,manufacturerNumber,reviews.doRecommend,brand\na,b,c,d,Amazon\n"));
    CHECK(t.n_cols() == 1);
    REQUIRE(t.dropped_columns().size() == 4);
    CHECK(t.dropped_columns()[0].drop_reason == DropReason::redundant);
    CHECK(t.dropped_columns()[3].name == "reviews.doRecommend");
    CHECK(t.dropped_columns()[3].drop_reason == DropReason::leakage);

    auto t2 = drop_redundant_columns(table_of("brand\nAmazon\n"));
    CHECK(t2.n_cols() == 1);

    auto t3 = drop_redundant_columns(table_of("manufacturer,brand\nAcme,Amazon\n"));
    CHECK(t3.n_cols() == 1);
    CHECK(t3.has_column("brand"));
}

TEST_CASE("descriptive_stats computes level percentages and missing rates") {
    auto stats = descriptive_stats(table_of("brand\nA\nA\nB\nC\n"));
    REQUIRE(stats.columns.size() == 1);
    const auto& levels = stats.columns[0].levels;
    REQUIRE(levels.size() == 3);
    CHECK(levels[0].level == "A");
    CHECK(levels[0].percent == doctest::Approx(50.0));
    CHECK(levels[1].percent == doctest::Approx(25.0));
    CHECK(levels[2].percent == doctest::Approx(25.0));

    auto single = descriptive_stats(table_of("brand\nOnly\nOnly\n"));
    CHECK(single.columns[0].levels[0].percent == doctest::Approx(100.0));

    double total = 0.0;
    for (const auto& level : levels) total += level.percent;
    CHECK(total == doctest::Approx(100.0).epsilon(1e-4));
}

TEST_CASE("full preprocess is idempotent and never grows the row count") {
    std::string csv =
        "id,brand,primaryCategories,reviews.didPurchase,reviews.numHelpful,reviews.rating,reviews.text\n";
    for (int i = 0; i < 40; ++i) {
        std::string rating = i == 5 ? "" : std::to_string(1 + i % 5);
        std::string helpful = i % 2 ? std::to_string(i) : "";
        std::string purchase = i == 3 ? "TRUE" : "";
        std::string cat =
            i % 3 == 0 ? "Health & Beauty" : (i % 3 == 1 ? "\"Electronics,Media\"" : "Electronics");
        csv += "r" + std::to_string(i) + ",Amazon," + cat + "," + purchase + "," + helpful + "," +
               rating + ",Great\n";
    }
    PipelineLog log1, log2;
    auto once = preprocess(table_of(csv), {}, log1);
    CHECK(once.n_rows() == 39);
    for (const auto& step : log1.steps) CHECK(step.rows_after <= step.rows_before);

    auto twice = preprocess(once, {}, log2);
    CHECK(csv_to_string(twice.to_csv()) == csv_to_string(once.to_csv()));

    // merged rare category is gone, levels are clean
    for (const auto& v : once.column("primaryCategories").values)
        CHECK((v == "Health_Beauty" || v == "Electronics"));
}

TEST_CASE("missing categorical cells become the unknown level") {
    PipelineLog log;
    auto t = fill_unknown_categories(table_of("brand,x\nAmazon,1\n,2\n"), &log);
    CHECK(t.column("brand").values[1] == "unknown");
    CHECK(t.column("brand").missing_count() == 0);
}

TEST_CASE("rows with missing, fractional or out-of-range ratings are dropped") {
    auto t = drop_invalid_rating_rows(table_of("reviews.rating,x\n5,a\n,b\n3.5,c\n7,d\n1,e\n"));
    CHECK(t.n_rows() == 2);
    CHECK(t.column("x").values == std::vector<std::string>{"a", "e"});
}
