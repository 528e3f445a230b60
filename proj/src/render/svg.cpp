#include "star_sense/render/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "star_sense/core/error.hpp"
#include "star_sense/core/format.hpp"

namespace starsense::render {

namespace {

constexpr double kMarginLeft = 160.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 44.0;

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

void check_finite(const ChartSpec& spec) {
    for (double v : spec.series.values)
        if (!std::isfinite(v)) throw NonFiniteValueError("chart series contains a non-finite value");
    if (!std::isfinite(spec.intercept)) throw NonFiniteValueError("chart intercept is non-finite");
    for (const auto& panel : spec.panels) {
        for (double v : panel.x)
            if (!std::isfinite(v)) throw NonFiniteValueError("line panel x contains a non-finite value");
        for (double v : panel.y)
            if (!std::isfinite(v)) throw NonFiniteValueError("line panel y contains a non-finite value");
    }
}

class SvgWriter {
public:
    SvgWriter(int width, int height) {
        body_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                 "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
                 " " + std::to_string(height) + "\">\n";
        body_ += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
                 std::to_string(height) + "\" fill=\"white\" class=\"background\"/>\n";
    }

    void text(double x, double y, const std::string& content, int size = 12,
              const std::string& anchor = "start", const std::string& extra = "") {
        body_ += "<text x=\"" + fmt_fixed(x) + "\" y=\"" + fmt_fixed(y) + "\" font-size=\"" +
                 std::to_string(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor + "\"" +
                 extra + ">" + escape_xml(content) + "</text>\n";
    }

    void data_bar(double x, double y, double w, double h, double value, const std::string& fill) {
        body_ += "<rect class=\"bar\" data-value=\"" + fmt_fixed(value) + "\" x=\"" + fmt_fixed(x) +
                 "\" y=\"" + fmt_fixed(y) + "\" width=\"" + fmt_fixed(w) + "\" height=\"" + fmt_fixed(h) +
                 "\" fill=\"" + fill + "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke = "#444",
              double stroke_width = 1.0) {
        body_ += "<line x1=\"" + fmt_fixed(x1) + "\" y1=\"" + fmt_fixed(y1) + "\" x2=\"" + fmt_fixed(x2) +
                 "\" y2=\"" + fmt_fixed(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                 fmt_fixed(stroke_width) + "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke) {
        body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.500\" points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) body_ += " ";
            body_ += fmt_fixed(points[i].first) + "," + fmt_fixed(points[i].second);
        }
        body_ += "\"/>\n";
    }

    std::string finish() {
        body_ += "</svg>\n";
        return std::move(body_);
    }

private:
    std::string body_;
};

struct ValueScale {
    double v_min, v_max, out_lo, out_hi;
    double operator()(double v) const {
        if (v_max == v_min) return (out_lo + out_hi) / 2.0;
        return out_lo + (v - v_min) / (v_max - v_min) * (out_hi - out_lo);
    }
};

std::string render_bars(const ChartSpec& spec, bool horizontal) {
    const auto& series = spec.series;
    if (series.values.empty()) throw EmptyInputError("bar chart needs at least one value");
    if (series.labels.size() != series.values.size())
        throw DimensionMismatchError("bar labels and values differ in length");

    SvgWriter svg(spec.width, spec.height);
    svg.text(spec.width / 2.0, 24.0, spec.title, 15, "middle");

    const double plot_left = horizontal ? kMarginLeft : 70.0;
    const double plot_right = spec.width - kMarginRight;
    const double plot_top = kMarginTop;
    const double plot_bottom = spec.height - kMarginBottom;
    const std::size_t n = series.values.size();

    double v_min = 0.0, v_max = 0.0;
    for (double v : series.values) {
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
    }
    if (v_max == v_min) v_max = v_min + 1.0;

    if (horizontal) {
        ValueScale scale{v_min, v_max, plot_left, plot_right};
        const double band = (plot_bottom - plot_top) / static_cast<double>(n);
        const double bar_h = band * 0.7;
        const double zero_x = scale(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = plot_top + band * static_cast<double>(i) + (band - bar_h) / 2.0;
            const double vx = scale(series.values[i]);
            const double x0 = std::min(zero_x, vx);
            svg.data_bar(x0, y, std::fabs(vx - zero_x), bar_h, series.values[i], "#4878a8");
            svg.text(plot_left - 8.0, y + bar_h / 2.0 + 4.0, series.labels[i], 11, "end");
            svg.text(std::max(zero_x, vx) + 4.0, y + bar_h / 2.0 + 4.0, fmt_fixed(series.values[i]), 10);
        }
        svg.line(zero_x, plot_top, zero_x, plot_bottom);
        svg.line(plot_left, plot_bottom, plot_right, plot_bottom);
        svg.text((plot_left + plot_right) / 2.0, spec.height - 12.0, spec.x_label, 12, "middle");
    } else {
        ValueScale scale{v_min, v_max, plot_bottom, plot_top};
        const double band = (plot_right - plot_left) / static_cast<double>(n);
        const double bar_w = band * 0.7;
        const double zero_y = scale(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = plot_left + band * static_cast<double>(i) + (band - bar_w) / 2.0;
            const double vy = scale(series.values[i]);
            const double y0 = std::min(zero_y, vy);
            svg.data_bar(x, y0, bar_w, std::fabs(zero_y - vy), series.values[i], "#4878a8");
            svg.text(x + bar_w / 2.0, plot_bottom + 16.0, series.labels[i], 10, "middle");
            svg.text(x + bar_w / 2.0, vy - 4.0, fmt_fixed(series.values[i]), 10, "middle");
        }
        svg.line(plot_left, zero_y, plot_right, zero_y);
        svg.text((plot_left + plot_right) / 2.0, spec.height - 8.0, spec.x_label, 12, "middle");
    }
    return svg.finish();
}

// Horizontal waterfall: one row per contribution, bars run from the running
// total before the delta to the running total after it; first row is the
// intercept from 0, last row the final prediction from 0.
std::string render_waterfall(const ChartSpec& spec) {
    const auto& series = spec.series;
    if (series.values.empty()) throw EmptyInputError("waterfall needs at least one delta");
    if (series.labels.size() != series.values.size())
        throw DimensionMismatchError("waterfall labels and values differ in length");

    SvgWriter svg(spec.width, spec.height);
    svg.text(spec.width / 2.0, 24.0, spec.title, 15, "middle");

    const std::size_t n = series.values.size();
    std::vector<double> levels(n + 1);
    levels[0] = spec.intercept;
    for (std::size_t i = 0; i < n; ++i) levels[i + 1] = levels[i] + series.values[i];
    const double final_value = levels[n];

    double v_min = std::min(0.0, spec.intercept), v_max = std::max(0.0, spec.intercept);
    for (double level : levels) {
        v_min = std::min(v_min, level);
        v_max = std::max(v_max, level);
    }
    if (v_max == v_min) v_max = v_min + 1.0;

    const double plot_left = kMarginLeft;
    const double plot_right = spec.width - kMarginRight - 60.0;
    const double plot_top = kMarginTop;
    const double plot_bottom = spec.height - kMarginBottom;
    ValueScale scale{v_min, v_max, plot_left, plot_right};

    const std::size_t rows = n + 2;  // intercept + deltas + final
    const double band = (plot_bottom - plot_top) / static_cast<double>(rows);
    const double bar_h = band * 0.65;

    auto draw_row = [&](std::size_t row, const std::string& label, double from, double to,
                        double value, const std::string& fill) {
        const double y = plot_top + band * static_cast<double>(row) + (band - bar_h) / 2.0;
        const double x0 = scale(std::min(from, to));
        const double x1 = scale(std::max(from, to));
        svg.data_bar(x0, y, std::max(x1 - x0, 0.5), bar_h, value, fill);
        svg.text(plot_left - 8.0, y + bar_h / 2.0 + 4.0, label, 11, "end");
        svg.text(x1 + 4.0, y + bar_h / 2.0 + 4.0, fmt_fixed(value), 10);
    };

    draw_row(0, "intercept", 0.0, spec.intercept, spec.intercept, "#888888");
    for (std::size_t i = 0; i < n; ++i)
        draw_row(i + 1, series.labels[i], levels[i], levels[i + 1], series.values[i],
                 series.values[i] >= 0.0 ? "#2e8b57" : "#c0504d");
    draw_row(n + 1, "prediction", 0.0, final_value, final_value, "#4878a8");

    svg.line(scale(0.0), plot_top, scale(0.0), plot_bottom);
    svg.text((plot_left + plot_right) / 2.0, spec.height - 12.0, spec.x_label, 12, "middle");
    return svg.finish();
}

std::string render_line_grid(const ChartSpec& spec) {
    if (spec.panels.empty()) throw EmptyInputError("line grid needs at least one panel");
    for (const auto& panel : spec.panels) {
        if (panel.x.size() != panel.y.size())
            throw DimensionMismatchError("line panel x and y differ in length");
        if (panel.x.empty()) throw EmptyInputError("line panel is empty");
    }

    SvgWriter svg(spec.width, spec.height);
    svg.text(spec.width / 2.0, 20.0, spec.title, 15, "middle");

    const std::size_t k = spec.panels.size();
    const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
    const std::size_t grid_rows = (k + cols - 1) / cols;
    const double cell_w = (spec.width - 40.0) / static_cast<double>(cols);
    const double cell_h = (spec.height - 56.0) / static_cast<double>(grid_rows);

    for (std::size_t p = 0; p < k; ++p) {
        const auto& panel = spec.panels[p];
        const double cx = 20.0 + cell_w * static_cast<double>(p % cols);
        const double cy = 36.0 + cell_h * static_cast<double>(p / cols);
        const double px0 = cx + 34.0, px1 = cx + cell_w - 10.0;
        const double py0 = cy + 24.0, py1 = cy + cell_h - 22.0;

        double x_min = panel.x.front(), x_max = panel.x.front();
        double y_min = panel.y.front(), y_max = panel.y.front();
        for (double v : panel.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : panel.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
        ValueScale sx{x_min, x_max, px0, px1};
        ValueScale sy{y_min, y_max, py1, py0};

        svg.text(cx + cell_w / 2.0, cy + 14.0, panel.title, 11, "middle");
        svg.line(px0, py1, px1, py1);
        svg.line(px0, py0, px0, py1);
        svg.text(px0 - 2.0, py0 + 4.0, fmt_fixed(y_max), 8, "end");
        svg.text(px0 - 2.0, py1 + 4.0, fmt_fixed(y_min), 8, "end");
        svg.text(px0, py1 + 12.0, fmt_fixed(x_min), 8, "middle");
        svg.text(px1, py1 + 12.0, fmt_fixed(x_max), 8, "middle");

        std::vector<std::pair<double, double>> points;
        points.reserve(panel.x.size());
        for (std::size_t i = 0; i < panel.x.size(); ++i)
            points.emplace_back(sx(panel.x[i]), sy(panel.y[i]));
        svg.polyline(points, "#4878a8");
    }
    return svg.finish();
}

}  // namespace

std::string render_chart(const ChartSpec& spec) {
    check_finite(spec);
    switch (spec.kind) {
        case ChartKind::bar_h: return render_bars(spec, true);
        case ChartKind::bar_v: return render_bars(spec, false);
        case ChartKind::waterfall: return render_waterfall(spec);
        case ChartKind::line_grid: return render_line_grid(spec);
    }
    throw InvalidHyperparamError("unknown chart kind");
}

void save_chart(const ChartSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << render_chart(spec);
}

}  // namespace starsense::render
