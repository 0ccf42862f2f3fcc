#include "bicost/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bicost/errors.hpp"

namespace bicost::io {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

/// Round-valued ticks covering [lo, hi] with a 1/2/5 step.
std::vector<double> nice_ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step =
        (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    double t = std::ceil(lo / step - 1e-9) * step;
    for (; t <= hi + step * 1e-9; t += step) {
        // clean up -0 and accumulated dust for stable labels
        if (std::fabs(t) < step * 1e-9) t = 0.0;
        ticks.push_back(t);
    }
    return ticks;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool ok() const { return lo <= hi; }
    void pad() {
        if (lo == hi) {
            const double p = lo == 0 ? 1.0 : 0.1 * std::fabs(lo);
            lo -= p;
            hi += p;
        } else {
            const double p = 0.04 * (hi - lo);
            lo -= p;
            hi += p;
        }
    }
};

} // namespace

std::string render_svg(const Table& t, const SvgStyle& style) {
    if (t.columns.size() < 2)
        throw config_error("render_svg: need an x column and one series");
    if (t.rows.size() < 2)
        throw config_error("render_svg: need at least two points per series");
    for (const auto& row : t.rows)
        if (row.size() != t.columns.size())
            throw config_error("render_svg: ragged row");

    const int n_series = static_cast<int>(t.columns.size()) - 1;
    Range rx, ry;
    for (const auto& row : t.rows) {
        rx.add(row[0]);
        for (int j = 1; j <= n_series; ++j) ry.add(row[j]);
    }
    if (!rx.ok() || !ry.ok())
        throw config_error("render_svg: no finite data to plot");
    rx.pad();
    ry.pad();

    const double W = style.width, H = style.height;
    const double ml = 72, mr = 24, mt = style.title.empty() ? 24 : 44,
                 mb = 56;
    const double pw = W - ml - mr, ph = H - mt - mb;
    auto X = [&](double x) { return ml + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto Y = [&](double y) {
        return mt + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph;
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W, "%.0f") +
         "\" height=\"" + fmt(H, "%.0f") + "\" viewBox=\"0 0 " +
         fmt(W, "%.0f") + " " + fmt(H, "%.0f") + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty())
        s += "<text x=\"" + fmt(W / 2) +
             "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"17\">" +
             escape_xml(style.title) + "</text>\n";

    // grid + ticks
    s += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (double v : nice_ticks(rx.lo, rx.hi)) {
        const double px = X(v);
        s += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
             fmt(px) + "\" y2=\"" + fmt(mt + ph) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(mt + ph + 18) +
             "\" text-anchor=\"middle\">" + fmt(v, "%.6g") + "</text>\n";
    }
    for (double v : nice_ticks(ry.lo, ry.hi)) {
        const double py = Y(v);
        s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
             fmt(ml + pw) + "\" y2=\"" + fmt(py) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py + 4) +
             "\" text-anchor=\"end\">" + fmt(v, "%.6g") + "</text>\n";
    }
    s += "</g>\n";

    // axes frame
    s += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
         fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    if (!style.x_label.empty())
        s += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(H - 14) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"14\">" +
             escape_xml(style.x_label) + "</text>\n";
    if (!style.y_label.empty())
        s += "<text x=\"18\" y=\"" + fmt(mt + ph / 2) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"14\" transform=\"rotate(-90 18 " +
             fmt(mt + ph / 2) + ")\">" + escape_xml(style.y_label) +
             "</text>\n";

    // series
    for (int j = 1; j <= n_series; ++j) {
        const char* color = kPalette[(j - 1) % kPaletteSize];
        std::string dash;
        if (!style.dash.empty())
            dash = style.dash[(j - 1) % style.dash.size()];
        std::string attrs = std::string(" fill=\"none\" stroke=\"") + color +
                            "\" stroke-width=\"1.6\"";
        if (!dash.empty()) attrs += " stroke-dasharray=\"" + dash + "\"";

        std::string pts;
        int run = 0;
        auto flush = [&]() {
            if (run >= 2)
                s += "<polyline points=\"" + pts + "\"" + attrs + "/>\n";
            pts.clear();
            run = 0;
        };
        for (const auto& row : t.rows) {
            if (std::isfinite(row[0]) && std::isfinite(row[j])) {
                if (run) pts += ' ';
                pts += fmt(X(row[0])) + "," + fmt(Y(row[j]));
                ++run;
            } else {
                flush();
            }
        }
        flush();
    }

    // legend, top-right corner of the plot area
    const double lx = ml + pw - 190, ly0 = mt + 14;
    s += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n";
    for (int j = 1; j <= n_series; ++j) {
        const double ly = ly0 + 18 * (j - 1);
        const char* color = kPalette[(j - 1) % kPaletteSize];
        std::string dash;
        if (!style.dash.empty())
            dash = style.dash[(j - 1) % style.dash.size()];
        s += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
             fmt(lx + 26) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"1.6\"" +
             (dash.empty() ? std::string()
                           : " stroke-dasharray=\"" + dash + "\"") +
             "/>\n";
        s += "<text x=\"" + fmt(lx + 32) + "\" y=\"" + fmt(ly + 4) + "\">" +
             escape_xml(t.columns[j]) + "</text>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

} // namespace bicost::io
