#include "star_sense/models/tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace starsense::models {

namespace {

struct SplitCandidate {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Better-than comparison with the deterministic tie-break: higher gain wins;
// equal gain prefers lower feature, then lower threshold.
bool better(const SplitCandidate& a, const SplitCandidate& b) {
    if (!a.found) return false;
    if (!b.found) return true;
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.feature != b.feature) return a.feature < b.feature;
    return a.threshold < b.threshold;
}

struct RegressionStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double y) {
        sum += y;
        sum_sq += y * y;
        ++n;
    }
    double sse() const {
        if (n == 0) return 0.0;
        return sum_sq - sum * sum / static_cast<double>(n);
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
};

struct ClassStats {
    std::array<std::size_t, kNumClasses> counts{};
    std::size_t n = 0;

    void add(int label) {
        ++counts[static_cast<std::size_t>(label)];
        ++n;
    }
    // count-weighted Gini impurity: n * (1 - sum p_k^2)
    double weighted_gini() const {
        if (n == 0) return 0.0;
        double sq = 0.0;
        for (std::size_t c : counts) {
            double p = static_cast<double>(c) / static_cast<double>(n);
            sq += p * p;
        }
        return static_cast<double>(n) * (1.0 - sq);
    }
};

class CartBuilder {
public:
    CartBuilder(const Matrix& x, std::span<const double> target, const CartParams& params, Rng& rng)
        : x_(x), target_(target), params_(params), rng_(rng) {}

    Tree build(std::span<const std::size_t> rows) {
        Tree tree;
        std::vector<std::size_t> work(rows.begin(), rows.end());
        build_node(tree, work, 0);
        return tree;
    }

private:
    int build_node(Tree& tree, std::vector<std::size_t>& rows, int depth) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        fill_leaf(tree.nodes.back(), rows);

        if (depth >= params_.max_depth || rows.size() < params_.min_samples_split) return index;

        SplitCandidate split = find_split(rows);
        if (!split.found || split.gain <= params_.min_gain) return index;

        std::vector<std::size_t> left, right;
        left.reserve(rows.size());
        right.reserve(rows.size());
        for (std::size_t r : rows) {
            if (x_(r, static_cast<std::size_t>(split.feature)) <= split.threshold) left.push_back(r);
            else right.push_back(r);
        }
        if (left.size() < params_.min_samples_leaf || right.size() < params_.min_samples_leaf) return index;

        rows.clear();
        rows.shrink_to_fit();

        // fill split fields after recursion-safe copy of children row sets
        int left_idx = build_node(tree, left, depth + 1);
        int right_idx = build_node(tree, right, depth + 1);
        TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.gain = split.gain;
        node.left = left_idx;
        node.right = right_idx;
        return index;
    }

    void fill_leaf(TreeNode& node, const std::vector<std::size_t>& rows) {
        node.n_samples = static_cast<std::uint32_t>(rows.size());
        if (params_.classification) {
            ClassStats stats;
            for (std::size_t r : rows) stats.add(label_of(r));
            node.class_dist.assign(kNumClasses, 0.0);
            for (std::size_t k = 0; k < kNumClasses; ++k)
                node.class_dist[k] = rows.empty() ? 0.0
                                                  : static_cast<double>(stats.counts[k]) /
                                                        static_cast<double>(rows.size());
            // value = majority label (ties to the lower star class)
            std::size_t best = 0;
            for (std::size_t k = 1; k < kNumClasses; ++k)
                if (stats.counts[k] > stats.counts[best]) best = k;
            node.value = static_cast<double>(best + 1);
        } else {
            RegressionStats stats;
            for (std::size_t r : rows) stats.add(target_[r]);
            node.value = stats.mean();
        }
    }

    int label_of(std::size_t row) const {
        return static_cast<int>(std::lround(target_[row])) - 1;  // labels 1..5 -> 0..4
    }

    SplitCandidate find_split(const std::vector<std::size_t>& rows) {
        const std::size_t p = x_.cols();
        std::vector<std::size_t> features;
        if (params_.mtry > 0 && params_.mtry < p) {
            features = sample_without_replacement(p, params_.mtry, rng_);
            std::sort(features.begin(), features.end());
        } else {
            features = iota_indices(p);
        }

        std::vector<SplitCandidate> per_feature(features.size());
#pragma omp parallel for schedule(static) if (rows.size() * features.size() > 16384)
        for (long long fi = 0; fi < static_cast<long long>(features.size()); ++fi) {
            per_feature[static_cast<std::size_t>(fi)] =
                best_split_on_feature(rows, features[static_cast<std::size_t>(fi)]);
        }

        SplitCandidate best;
        for (const auto& cand : per_feature)
            if (better(cand, best)) best = cand;
        return best;
    }

    SplitCandidate best_split_on_feature(const std::vector<std::size_t>& rows, std::size_t feature) {
        const std::size_t n = rows.size();
        // scratch reused across nodes; thread_local keeps the feature-parallel
        // path allocation-free
        thread_local std::vector<std::pair<double, double>> sorted;  // (feature value, target)
        sorted.clear();
        sorted.reserve(n);
        for (std::size_t r : rows) sorted.emplace_back(x_(r, feature), target_[r]);
        // lexicographic order is total, so the result never depends on the
        // incoming row order; equal-value groups only ever split as a block
        std::sort(sorted.begin(), sorted.end());

        SplitCandidate best;
        best.feature = static_cast<int>(feature);

        if (params_.classification) {
            ClassStats total;
            for (const auto& [v, t] : sorted) total.add(static_cast<int>(std::lround(t)) - 1);
            const double parent = total.weighted_gini();
            ClassStats left;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left.add(static_cast<int>(std::lround(sorted[i].second)) - 1);
                if (sorted[i].first == sorted[i + 1].first) continue;
                if (left.n < params_.min_samples_leaf || n - left.n < params_.min_samples_leaf) continue;
                ClassStats right;
                right.n = n - left.n;
                for (std::size_t k = 0; k < kNumClasses; ++k)
                    right.counts[k] = total.counts[k] - left.counts[k];
                const double gain = parent - left.weighted_gini() - right.weighted_gini();
                SplitCandidate cand{true, best.feature, (sorted[i].first + sorted[i + 1].first) / 2.0, gain};
                if (better(cand, best)) best = cand;
            }
        } else {
            RegressionStats total;
            for (const auto& [v, t] : sorted) total.add(t);
            const double parent_sse = total.sse();
            RegressionStats left;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left.add(sorted[i].second);
                if (sorted[i].first == sorted[i + 1].first) continue;
                if (left.n < params_.min_samples_leaf || n - left.n < params_.min_samples_leaf) continue;
                RegressionStats right;
                right.n = n - left.n;
                right.sum = total.sum - left.sum;
                right.sum_sq = total.sum_sq - left.sum_sq;
                const double gain = parent_sse - left.sse() - right.sse();
                SplitCandidate cand{true, best.feature, (sorted[i].first + sorted[i + 1].first) / 2.0, gain};
                if (better(cand, best)) best = cand;
            }
        }
        return best;
    }

    const Matrix& x_;
    std::span<const double> target_;
    const CartParams& params_;
    Rng& rng_;
};

class XgbBuilder {
public:
    XgbBuilder(const Matrix& x, std::span<const double> grad, std::span<const double> hess,
               const XgbParams& params)
        : x_(x), grad_(grad), hess_(hess), params_(params) {}

    Tree build(std::span<const std::size_t> rows) {
        Tree tree;
        std::vector<std::size_t> work(rows.begin(), rows.end());
        build_node(tree, work, 0);
        return tree;
    }

private:
    double leaf_weight(double g, double h) const { return -g / (h + params_.lambda); }
    double score(double g, double h) const { return g * g / (h + params_.lambda); }

    int build_node(Tree& tree, std::vector<std::size_t>& rows, int depth) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        double g_sum = 0.0, h_sum = 0.0;
        for (std::size_t r : rows) {
            g_sum += grad_[r];
            h_sum += hess_[r];
        }
        tree.nodes.back().n_samples = static_cast<std::uint32_t>(rows.size());
        tree.nodes.back().value = leaf_weight(g_sum, h_sum);

        if (depth >= params_.max_depth || rows.size() < 2) return index;

        SplitCandidate split = find_split(rows, g_sum, h_sum);
        if (!split.found || split.gain <= 0.0) return index;

        std::vector<std::size_t> left, right;
        left.reserve(rows.size());
        right.reserve(rows.size());
        for (std::size_t r : rows) {
            if (x_(r, static_cast<std::size_t>(split.feature)) <= split.threshold) left.push_back(r);
            else right.push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        int left_idx = build_node(tree, left, depth + 1);
        int right_idx = build_node(tree, right, depth + 1);
        TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.gain = split.gain;
        node.left = left_idx;
        node.right = right_idx;
        return index;
    }

    SplitCandidate find_split(const std::vector<std::size_t>& rows, double g_total, double h_total) {
        const std::size_t p = x_.cols();
        std::vector<SplitCandidate> per_feature(p);
#pragma omp parallel for schedule(static) if (rows.size() * p > 16384)
        for (long long f = 0; f < static_cast<long long>(p); ++f)
            per_feature[static_cast<std::size_t>(f)] =
                best_split_on_feature(rows, static_cast<std::size_t>(f), g_total, h_total);

        SplitCandidate best;
        for (const auto& cand : per_feature)
            if (better(cand, best)) best = cand;
        return best;
    }

    SplitCandidate best_split_on_feature(const std::vector<std::size_t>& rows, std::size_t feature,
                                         double g_total, double h_total) {
        const std::size_t n = rows.size();
        struct Entry {
            double value, g, h;
        };
        thread_local std::vector<Entry> sorted;
        sorted.clear();
        sorted.reserve(n);
        for (std::size_t r : rows) sorted.push_back({x_(r, feature), grad_[r], hess_[r]});
        std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
            if (a.value != b.value) return a.value < b.value;
            if (a.g != b.g) return a.g < b.g;
            return a.h < b.h;
        });

        SplitCandidate best;
        best.feature = static_cast<int>(feature);
        const double parent_score = score(g_total, h_total);

        double g_left = 0.0, h_left = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            g_left += sorted[i].g;
            h_left += sorted[i].h;
            if (sorted[i].value == sorted[i + 1].value) continue;
            if (i + 1 < params_.min_samples_leaf || n - i - 1 < params_.min_samples_leaf) continue;
            const double h_right = h_total - h_left;
            if (h_left < params_.min_child_weight || h_right < params_.min_child_weight) continue;
            const double g_right = g_total - g_left;
            const double gain =
                0.5 * (score(g_left, h_left) + score(g_right, h_right) - parent_score) - params_.gamma;
            SplitCandidate cand{true, best.feature, (sorted[i].value + sorted[i + 1].value) / 2.0, gain};
            if (better(cand, best)) best = cand;
        }
        return best;
    }

    const Matrix& x_;
    std::span<const double> grad_;
    std::span<const double> hess_;
    const XgbParams& params_;
};

}  // namespace

Tree grow_cart(const Matrix& x, std::span<const double> target, std::span<const std::size_t> rows,
               const CartParams& params, Rng& rng) {
    CartBuilder builder(x, target, params, rng);
    return builder.build(rows);
}

Tree grow_xgb(const Matrix& x, std::span<const double> grad, std::span<const double> hess,
              std::span<const std::size_t> rows, const XgbParams& params) {
    XgbBuilder builder(x, grad, hess, params);
    return builder.build(rows);
}

std::vector<std::size_t> assign_leaves(const Tree& tree, const Matrix& x,
                                       std::span<const std::size_t> rows) {
    std::vector<std::size_t> leaves(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int idx = 0;
        while (tree.nodes[static_cast<std::size_t>(idx)].feature >= 0) {
            const TreeNode& node = tree.nodes[static_cast<std::size_t>(idx)];
            idx = x(rows[i], static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left
                                                                                       : node.right;
        }
        leaves[i] = static_cast<std::size_t>(idx);
    }
    return leaves;
}

}  // namespace starsense::models
