#pragma once

#include <string>
#include <vector>

namespace starsense::render {

enum class ChartKind { bar_h, bar_v, waterfall, line_grid };

struct Series {
    std::vector<std::string> labels;
    std::vector<double> values;
};

struct LinePanel {
    std::string title;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartSpec {
    ChartKind kind = ChartKind::bar_h;
    std::string title;
    std::string x_label;
    std::string y_label;
    Series series;                  // bar and waterfall kinds
    double intercept = 0.0;         // waterfall: baseline the deltas start from
    std::vector<LinePanel> panels;  // line_grid kind
    int width = 760;
    int height = 480;
};

// Deterministic SVG 1.1 emitter: identical specs produce identical bytes,
// all numbers use fixed 3-decimal format. Data bars carry class="bar" and a
// data-value attribute. NonFiniteValueError on NaN/inf inputs,
// EmptyInputError on empty series.
std::string render_chart(const ChartSpec& spec);
void save_chart(const ChartSpec& spec, const std::string& path);

}  // namespace starsense::render
