#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "star_sense/core/matrix.hpp"
#include "star_sense/core/rng.hpp"

namespace starsense::models {

inline constexpr std::size_t kNumClasses = 5;  // star ratings 1..5

// Binary decision tree node. feature == -1 marks a leaf. Split nodes carry
// the impurity (or second-order) gain recorded at training time, which is
// what impurity-based feature importance sums.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;                   // leaf: mean target / boosting weight
    std::vector<double> class_dist;       // leaf class distribution (classification forests)
    double gain = 0.0;
    std::uint32_t n_samples = 0;
};

struct Tree {
    std::vector<TreeNode> nodes;

    bool empty() const { return nodes.empty(); }

    const TreeNode& leaf_for(std::span<const double> row) const {
        int idx = 0;
        while (nodes[static_cast<std::size_t>(idx)].feature >= 0) {
            const TreeNode& node = nodes[static_cast<std::size_t>(idx)];
            idx = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
        }
        return nodes[static_cast<std::size_t>(idx)];
    }

    double predict_value(std::span<const double> row) const { return leaf_for(row).value; }
};

struct CartParams {
    bool classification = false;
    int max_depth = 30;
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
    std::size_t mtry = 0;  // 0 = all features
    double min_gain = 1e-12;
};

// Greedy CART: variance reduction for regression targets, Gini for class
// labels (1..5 passed as doubles). Split ties resolve to the lower feature
// index, then the lower threshold, so training is deterministic.
Tree grow_cart(const Matrix& x, std::span<const double> target, std::span<const std::size_t> rows,
               const CartParams& params, Rng& rng);

struct XgbParams {
    int max_depth = 6;
    std::size_t min_samples_leaf = 1;
    double min_child_weight = 1.0;  // minimum hessian sum per side
    double lambda = 1.0;            // L2 on leaf weights
    double gamma = 0.0;             // gain penalty per split
};

// Second-order tree: leaf weight -G/(H+lambda), split gain
// 0.5*(GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)) - gamma; splits with
// non-positive gain are not taken.
Tree grow_xgb(const Matrix& x, std::span<const double> grad, std::span<const double> hess,
              std::span<const std::size_t> rows, const XgbParams& params);

// Leaf node index per row, used to re-fit boosting leaf values.
std::vector<std::size_t> assign_leaves(const Tree& tree, const Matrix& x,
                                       std::span<const std::size_t> rows);

}  // namespace starsense::models
