#pragma once

// Serial reference implementations, deliberately naive and independent of
// the library's optimized code paths. Tests check the fast paths against
// these; the kernel benchmark tool compares their runtimes. Not linked into
// the CLI.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/models/model.hpp"
#include "star_sense/sentiment/lexicon.hpp"
#include "star_sense/sentiment/scorer.hpp"

namespace starsense::reference {

// Partial dependence as the literal double loop: for each grid value, for
// each row, predict with the feature overwritten, then average.
std::vector<double> naive_pdp(const models::Predictor& model, const Matrix& data,
                              std::size_t feature_index, std::span<const double> grid);

// Exhaustive k-nearest-neighbor regression from raw data: z-score, compute
// every distance, sort, average the k closest targets (distance ties by row
// index).
double knn_regression_brute(const Matrix& train_x, std::span<const double> train_y,
                            std::span<const double> query, std::size_t k);

// Closed-form break-down deltas for an exactly linear model
// f(x) = intercept + sum(b_j x_j): delta_j = b_j * (x_j - mean background x_j).
std::vector<double> linear_breakdown_deltas(std::span<const double> coefficients,
                                            std::span<const double> instance,
                                            const Matrix& background);

// Per-feature split-gain sums recomputed by walking a serialized model file
// (JSON produced by model_to_string), independent of the Tree structures.
std::vector<double> impurity_from_serialized(const std::string& model_json,
                                             std::size_t feature_count);

// Serial row-by-row sentiment scoring (same scoring rule, no OpenMP).
Matrix serial_score_rows(const std::vector<std::string>& texts, const sentiment::Lexicon& lexicon,
                         sentiment::ScoreMode mode);

// Serial batch predict (no OpenMP), for benchmark comparison.
std::vector<double> serial_predict(const models::Predictor& model, const Matrix& rows);

}  // namespace starsense::reference
