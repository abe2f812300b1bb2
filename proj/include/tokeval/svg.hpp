#pragma once

// Self-contained SVG figures: correlation heat map and a bubble scatter.
// No external fonts or stylesheets; all styling is inline.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tokeval/error.hpp"
#include "tokeval/format.hpp"
#include "tokeval/stats.hpp"

namespace tokeval::svg {

inline std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct Rgb {
    int r, g, b;
};

inline Rgb mix(Rgb a, Rgb b, double t) {
    t = std::clamp(t, 0.0, 1.0);
    auto lerp = [t](int x, int y) { return static_cast<int>(std::lround(x + (y - x) * t)); };
    return {lerp(a.r, b.r), lerp(a.g, b.g), lerp(a.b, b.b)};
}

inline std::string css(Rgb c) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

/// Diverging ramp: -1 blue, 0 white, +1 red.
inline Rgb diverging(double r) {
    constexpr Rgb blue{59, 76, 192}, white{247, 247, 247}, red{180, 4, 38};
    return r < 0 ? mix(white, blue, -r) : mix(white, red, r);
}

/// Sequential ramp for t in [0, 1].
inline Rgb sequential(double t) {
    constexpr Rgb lo{68, 1, 84}, mid{33, 145, 140}, hi{253, 231, 37};
    return t < 0.5 ? mix(lo, mid, t * 2) : mix(mid, hi, (t - 0.5) * 2);
}

inline std::string num(double v) {
    auto t = format_fixed(v, 2);
    return t == "-0.00" ? "0.00" : t;
}

inline std::string render_heatmap(const CorrelationMatrix& m, std::string_view title = "Correlation matrix") {
    const int n = static_cast<int>(m.labels.size());
    constexpr int cell = 64;
    constexpr int left = 150;
    constexpr int top = 60;
    const int width = left + n * cell + 20;
    const int height = top + n * cell + 120;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + std::to_string(width / 2) + "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">" +
         escape(title) + "</text>\n";
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double r = m.r[i][k];
            const int x = left + k * cell;
            const int y = top + i * cell;
            s += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(cell) +
                 "\" height=\"" + std::to_string(cell) + "\" fill=\"" + css(diverging(r)) +
                 "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
            const char* ink = std::abs(r) > 0.6 ? "#ffffff" : "#000000";
            s += "<text class=\"cell\" data-row=\"" + std::to_string(i) + "\" data-col=\"" + std::to_string(k) + "\" x=\"" +
                 std::to_string(x + cell / 2) + "\" y=\"" + std::to_string(y + cell / 2 + 5) +
                 "\" text-anchor=\"middle\" font-size=\"13\" fill=\"" + ink + "\">" + num(r) + "</text>\n";
        }
        s += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" + std::to_string(top + i * cell + cell / 2 + 5) +
             "\" text-anchor=\"end\" font-size=\"12\">" + escape(m.labels[i]) + "</text>\n";
        const int cx = left + i * cell + cell / 2;
        const int cy = top + n * cell + 10;
        s += "<text x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(cy) + "\" text-anchor=\"end\" font-size=\"12\" transform=\"rotate(-45 " +
             std::to_string(cx) + " " + std::to_string(cy) + ")\">" + escape(m.labels[i]) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

struct ScatterSpec {
    std::string x;
    std::string y;
    std::optional<std::string> size;  // marker area proportional to this column
    std::optional<std::string> color; // linear ramp over this column
    std::string title;
};

namespace detail {

struct Axis {
    double lo;
    double hi;
};

inline Axis padded(const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double lo = *mn, hi = *mx;
    if (hi == lo) {
        const double pad = lo == 0 ? 1.0 : std::abs(lo) * 0.1;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.12;
    return {lo - pad, hi + pad};
}

inline std::vector<double> ticks(Axis a, int target = 5) {
    const double span = a.hi - a.lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= target) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(a.lo / step) * step; t <= a.hi + step * 1e-9; t += step) out.push_back(t);
    return out;
}

inline std::string tick_label(double v) {
    std::string s = format_fixed(v, 2);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

} // namespace detail

/// One circle per model; data-* attributes carry the plotted values.
inline std::string render_scatter(const MetricTable& table, const ScatterSpec& spec) {
    const auto& models = table.models();
    if (models.empty()) throw Error("scatter needs at least one model");
    const auto& xs = table.column(spec.x).values;
    const auto& ys = table.column(spec.y).values;
    const std::vector<double>* sizes = spec.size ? &table.column(*spec.size).values : nullptr;
    const std::vector<double>* colors = spec.color ? &table.column(*spec.color).values : nullptr;
    auto check = [&](const std::vector<double>& v, const std::string& name) {
        for (double d : v)
            if (!std::isfinite(d)) throw Error("column '" + name + "' has missing values");
    };
    check(xs, spec.x);
    check(ys, spec.y);
    if (sizes) {
        check(*sizes, *spec.size);
        for (double d : *sizes)
            if (d < 0) throw Error("size column '" + *spec.size + "' has negative values");
    }
    if (colors) check(*colors, *spec.color);

    constexpr int width = 720, height = 520;
    constexpr int left = 80, right = 200, top = 50, bottom = 70;
    constexpr int plot_w = width - left - right, plot_h = height - top - bottom;
    constexpr double max_radius = 32, min_radius = 3, default_radius = 10;

    const auto ax = detail::padded(xs);
    const auto ay = detail::padded(ys);
    auto px = [&](double v) { return left + (v - ax.lo) / (ax.hi - ax.lo) * plot_w; };
    auto py = [&](double v) { return top + plot_h - (v - ay.lo) / (ay.hi - ay.lo) * plot_h; };

    double size_max = 0;
    if (sizes) size_max = *std::max_element(sizes->begin(), sizes->end());
    double color_lo = 0, color_hi = 0;
    if (colors) {
        auto [mn, mx] = std::minmax_element(colors->begin(), colors->end());
        color_lo = *mn;
        color_hi = *mx;
    }
    auto radius = [&](std::size_t i) {
        if (!sizes) return default_radius;
        if (size_max == 0) return min_radius;
        return std::max(min_radius, max_radius * std::sqrt((*sizes)[i] / size_max));
    };
    auto fill = [&](std::size_t i) {
        if (!colors) return css(sequential(0.5));
        const double t = color_hi == color_lo ? 0.5 : ((*colors)[i] - color_lo) / (color_hi - color_lo);
        return css(sequential(t));
    };
    auto f = [](double v) { return format_shortest(std::round(v * 100) / 100); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    const std::string title = spec.title.empty() ? spec.y + " vs " + spec.x : spec.title;
    s += "<text x=\"" + std::to_string(left + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
         escape(title) + "</text>\n";
    s += "<rect x=\"" + std::to_string(left) + "\" y=\"" + std::to_string(top) + "\" width=\"" + std::to_string(plot_w) +
         "\" height=\"" + std::to_string(plot_h) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

    for (double t : detail::ticks(ax)) {
        const double x = px(t);
        s += "<line x1=\"" + f(x) + "\" y1=\"" + std::to_string(top + plot_h) + "\" x2=\"" + f(x) + "\" y2=\"" +
             std::to_string(top + plot_h + 5) + "\" stroke=\"#333333\"/>\n";
        s += "<text x=\"" + f(x) + "\" y=\"" + std::to_string(top + plot_h + 20) +
             "\" text-anchor=\"middle\" font-size=\"11\">" + detail::tick_label(t) + "</text>\n";
    }
    for (double t : detail::ticks(ay)) {
        const double y = py(t);
        s += "<line x1=\"" + std::to_string(left - 5) + "\" y1=\"" + f(y) + "\" x2=\"" + std::to_string(left) + "\" y2=\"" +
             f(y) + "\" stroke=\"#333333\"/>\n";
        s += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" + f(y + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
             detail::tick_label(t) + "</text>\n";
    }
    s += "<text class=\"x-label\" x=\"" + std::to_string(left + plot_w / 2) + "\" y=\"" + std::to_string(height - 20) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + escape(spec.x) + "</text>\n";
    const int ylx = 22, yly = top + plot_h / 2;
    s += "<text class=\"y-label\" x=\"" + std::to_string(ylx) + "\" y=\"" + std::to_string(yly) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 " + std::to_string(ylx) + " " +
         std::to_string(yly) + ")\">" + escape(spec.y) + "</text>\n";

    // Larger markers first so small ones stay visible.
    std::vector<std::size_t> order(models.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radius(a) > radius(b); });
    for (std::size_t i : order) {
        s += "<circle class=\"marker\" data-model=\"" + escape(models[i]) + "\" data-x=\"" + format_shortest(xs[i]) +
             "\" data-y=\"" + format_shortest(ys[i]) + "\" cx=\"" + f(px(xs[i])) + "\" cy=\"" + f(py(ys[i])) + "\" r=\"" +
             f(radius(i)) + "\" fill=\"" + fill(i) + "\" fill-opacity=\"0.8\" stroke=\"#222222\"/>\n";
    }

    const int lx = left + plot_w + 20;
    int ly = top + 10;
    s += "<text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(ly) + "\" font-size=\"12\" font-weight=\"bold\">Models</text>\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
        ly += 22;
        s += "<circle cx=\"" + std::to_string(lx + 6) + "\" cy=\"" + std::to_string(ly - 4) + "\" r=\"6\" fill=\"" + fill(i) +
             "\" stroke=\"#222222\"/>\n";
        s += "<text class=\"legend\" x=\"" + std::to_string(lx + 18) + "\" y=\"" + std::to_string(ly) +
             "\" font-size=\"12\">" + escape(models[i]) + "</text>\n";
    }
    ly += 30;
    if (spec.size) {
        s += "<text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(ly) + "\" font-size=\"11\">size: " +
             escape(*spec.size) + "</text>\n";
        ly += 18;
    }
    if (spec.color) {
        s += "<text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(ly) + "\" font-size=\"11\">color: " +
             escape(*spec.color) + " (" + num(color_lo) + " to " + num(color_hi) + ")</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace tokeval::svg
