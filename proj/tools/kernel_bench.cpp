// Compares the OpenMP kernels against their serial reference
// implementations: same results, different wall time. Not a correctness
// gate (the test suite covers that); run it to see what the parallel paths
// buy on this machine.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "reference.hpp"
#include "star_sense/core/rng.hpp"
#include "star_sense/features/feature_matrix.hpp"
#include "star_sense/models/model.hpp"
#include "star_sense/sentiment/lexicon.hpp"
#include "star_sense/sentiment/scorer.hpp"
#include "star_sense/xai/pdp.hpp"

using namespace starsense;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const std::string& kernel, double serial_s, double parallel_s, bool same) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", kernel.c_str(), serial_s, parallel_s,
                parallel_s > 0 ? serial_s / parallel_s : 0.0, same ? "results match" : "RESULTS DIFFER");
}

features::FeatureMatrix synthetic_regression(std::size_t n, std::size_t p, std::uint64_t seed) {
    features::FeatureMatrix fm;
    fm.x = Matrix(n, p);
    fm.y.resize(n);
    Rng rng(seed);
    for (std::size_t j = 0; j < p; ++j) fm.feature_names.push_back("x" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        double y = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            fm.x(i, j) = rng.next_double(-2.0, 2.0);
            y += (j % 2 ? -1.0 : 1.0) * static_cast<double>(j + 1) * 0.3 * fm.x(i, j);
        }
        fm.y[i] = y + 0.2 * rng.next_normal();
    }
    return fm;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both columns run serial code\n\n");
#endif
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    // sentiment scoring over many rows
    {
        sentiment::Lexicon lex;
        lex.add("great", sentiment::Category::joy);
        lex.add("great", sentiment::Category::positive);
        lex.add("bad", sentiment::Category::negative);
        lex.add("scary", sentiment::Category::fear);
        std::vector<std::string> texts;
        Rng rng(7);
        const char* words[] = {"great", "bad", "scary", "gadget", "works", "fine", "really"};
        for (std::size_t i = 0; i < 60000; ++i) {
            std::string text;
            for (int w = 0; w < 24; ++w) {
                text += words[rng.next_index(7)];
                text += ' ';
            }
            texts.push_back(text);
        }
        ingest::ReviewTable table;
        ingest::Column col;
        col.spec = {"reviews.text", ingest::ColumnKind::text, std::nullopt};
        col.values = texts;
        col.missing.assign(texts.size(), false);
        table.add_column(std::move(col));

        auto t0 = std::chrono::steady_clock::now();
        Matrix serial = reference::serial_score_rows(texts, lex, sentiment::ScoreMode::rate);
        double serial_s = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = sentiment::score_table(table, "reviews.text", lex, sentiment::ScoreMode::rate);
        double parallel_s = seconds_since(t0);
        row("sentiment score_table", serial_s, parallel_s, serial.data() == parallel.scores.data());
    }

    // forest training and batch prediction
    {
        auto fm = synthetic_regression(4000, 10, 11);
        models::ModelSpec spec;
        spec.algorithm = models::Algorithm::random_forest;
        spec.task = models::Task::regression;
        spec.hyperparams["n_trees"] = 60;
        spec.seed = 3;

#ifdef _OPENMP
        int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        auto t0 = std::chrono::steady_clock::now();
        auto model_serial = models::train(spec, fm);
        double serial_s = seconds_since(t0);
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        t0 = std::chrono::steady_clock::now();
        auto model_parallel = models::train(spec, fm);
        double parallel_s = seconds_since(t0);
        bool same = model_serial->predict(fm.x) == model_parallel->predict(fm.x);
        row("random forest train", serial_s, parallel_s, same);

        t0 = std::chrono::steady_clock::now();
        auto pred_serial = reference::serial_predict(*model_parallel, fm.x);
        serial_s = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto pred_parallel = model_parallel->predict(fm.x);
        parallel_s = seconds_since(t0);
        row("forest batch predict", serial_s, parallel_s, pred_serial == pred_parallel);

        // partial dependence: module vs the naive double loop
        auto curve_start = std::chrono::steady_clock::now();
        auto curve = xai::partial_dependence(*model_parallel, 0, fm.x, 20, "x0");
        parallel_s = seconds_since(curve_start);
        curve_start = std::chrono::steady_clock::now();
        auto naive = reference::naive_pdp(*model_parallel, fm.x, 0, curve.grid);
        serial_s = seconds_since(curve_start);
        row("partial dependence", serial_s, parallel_s, naive == curve.pd_values);
    }
    return 0;
}
