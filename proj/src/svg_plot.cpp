#include "ratiochart/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ratiochart/distributions.hpp"
#include "ratiochart/errors.hpp"

namespace ratiochart {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double left, top, width, height;
    double x0, x1, y0, y1;

    double px(double x) const { return left + (x1 == x0 ? 0.5 : (x - x0) / (x1 - x0)) * width; }
    double py(double y) const { return top + height - (y1 == y0 ? 0.5 : (y - y0) / (y1 - y0)) * height; }
};

void axes(std::string& out, const Frame& f, int ticks_x, int ticks_y) {
    out += "<rect x=\"" + fmt(f.left) + "\" y=\"" + fmt(f.top) + "\" width=\"" + fmt(f.width) + "\" height=\"" +
           fmt(f.height) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= ticks_y; ++i) {
        const double v = f.y0 + (f.y1 - f.y0) * i / ticks_y;
        const double y = f.py(v);
        out += "<line x1=\"" + fmt(f.left - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(f.left) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + fmt(f.left - 6) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" + label(v) +
               "</text>\n";
    }
    for (int i = 0; i <= ticks_x; ++i) {
        const double v = f.x0 + (f.x1 - f.x0) * i / ticks_x;
        const double x = f.px(v);
        const double yb = f.top + f.height;
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(yb) + "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(yb + 4) +
               "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(yb + 16) + "\" text-anchor=\"middle\">" + label(v) +
               "</text>\n";
    }
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* style) {
    std::string out = "<polyline fill=\"none\" " + std::string(style) + " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += fmt(pts[i].first) + "," + fmt(pts[i].second);
    }
    return out + "\"/>\n";
}

}  // namespace

std::vector<DensityCurve> phase1_density_curves(const ChartState& state, std::size_t points) {
    const std::size_t m = state.config().m;
    if (state.phase() != ChartPhase::monitoring || state.snapshots().size() < m) {
        throw UsageError("density overlay needs a chart that completed Phase I");
    }
    if (points < 2) throw UsageError("density overlay needs at least 2 points");
    std::vector<DensityCurve> curves;
    for (std::size_t k : {std::size_t{1}, m}) {
        const PosteriorSnapshot& s = state.snapshots()[k - 1];
        const InvertedBetaParams ib{s.kn};
        // Central 99.9% of the pivot, mapped back to u.
        const double lo = pivot_inverse(inverted_beta_quantile(0.0005, ib), s.beta_bar_k, s.c_k);
        const double hi = pivot_inverse(inverted_beta_quantile(0.9995, ib), s.beta_bar_k, s.c_k);
        DensityCurve c{k, {}};
        for (std::size_t i = 0; i < points; ++i) {
            const double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
            c.points.emplace_back(u, ratio_pdf(u, s.c_k, s.beta_bar_k, s.kn));
        }
        curves.push_back(std::move(c));
        if (m == 1) break;
    }
    return curves;
}

std::string render_svg(const std::vector<ChartPoint>& trace, const std::vector<DensityCurve>& overlay,
                       const PlotOptions& options) {
    if (trace.empty()) throw UsageError("cannot plot an empty trace");
    const double total_w = options.width;
    const double main_w = overlay.empty() ? total_w : total_w * 0.68;
    const double h = options.height;

    double lo = trace.front().u_hat, hi = lo;
    for (const ChartPoint& p : trace) {
        lo = std::min({lo, p.u_hat, p.lcl});
        hi = std::max({hi, p.u_hat, p.ucl});
    }
    const double pad = (hi - lo) * 0.08 + 1e-9;
    const Frame f{60, 40, main_w - 80, h - 90,
                  static_cast<double>(trace.front().index) - 0.5, static_cast<double>(trace.back().index) + 0.5,
                  lo - pad, hi + pad};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(total_w) + "\" height=\"" + fmt(h) +
           "\" viewBox=\"0 0 " + fmt(total_w) + " " + fmt(h) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(f.left) + "\" y=\"24\" font-size=\"14\">" + escape(options.title) + "</text>\n";
    axes(out, f, std::min<int>(10, static_cast<int>(trace.size())), 5);
    out += "<text x=\"" + fmt(f.left + f.width / 2) + "\" y=\"" + fmt(h - 12) +
           "\" text-anchor=\"middle\">sample index</text>\n";

    // Phase boundary.
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i - 1].phase == PointPhase::phase1 && trace[i].phase == PointPhase::phase2) {
            const double x = f.px(static_cast<double>(trace[i].index) - 0.5);
            out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(f.top) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
                   fmt(f.top + f.height) + "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
        }
    }

    // Limits as steps centred on each index.
    std::vector<std::pair<double, double>> lcl, ucl, u;
    for (const ChartPoint& p : trace) {
        const double xa = f.px(static_cast<double>(p.index) - 0.5);
        const double xb = f.px(static_cast<double>(p.index) + 0.5);
        lcl.emplace_back(xa, f.py(p.lcl));
        lcl.emplace_back(xb, f.py(p.lcl));
        ucl.emplace_back(xa, f.py(p.ucl));
        ucl.emplace_back(xb, f.py(p.ucl));
        u.emplace_back(f.px(static_cast<double>(p.index)), f.py(p.u_hat));
    }
    out += polyline(lcl, "stroke=\"#c33\" stroke-width=\"1.2\"");
    out += polyline(ucl, "stroke=\"#c33\" stroke-width=\"1.2\"");
    out += polyline(u, "stroke=\"#236\" stroke-width=\"1.4\"");
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out += "<circle cx=\"" + fmt(u[i].first) + "\" cy=\"" + fmt(u[i].second) + "\" r=\"2.5\" fill=\"#236\"/>\n";
        if (trace[i].signal) {
            out += "<circle cx=\"" + fmt(u[i].first) + "\" cy=\"" + fmt(u[i].second) +
                   "\" r=\"7\" fill=\"none\" stroke=\"#c00\" stroke-width=\"2\"><title>signal at " +
                   std::to_string(trace[i].index) + "</title></circle>\n";
        }
    }

    if (!overlay.empty()) {
        double u0 = overlay.front().points.front().first, u1 = u0, d1 = 0.0;
        for (const DensityCurve& c : overlay) {
            for (const auto& [x, d] : c.points) {
                u0 = std::min(u0, x);
                u1 = std::max(u1, x);
                d1 = std::max(d1, d);
            }
        }
        const Frame g{main_w + 40, 40, total_w - main_w - 60, h - 90, u0, u1, 0.0, d1 * 1.05};
        out += "<text x=\"" + fmt(g.left) + "\" y=\"24\">pdf of u, Phase I</text>\n";
        axes(out, g, 3, 4);
        const char* styles[] = {"stroke=\"#999\" stroke-width=\"1.2\" stroke-dasharray=\"5 3\"",
                                "stroke=\"#236\" stroke-width=\"1.4\""};
        for (std::size_t c = 0; c < overlay.size(); ++c) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& [x, d] : overlay[c].points) pts.emplace_back(g.px(x), g.py(d));
            out += polyline(pts, styles[std::min<std::size_t>(c, 1)]);
            out += "<text x=\"" + fmt(g.left + g.width - 4) + "\" y=\"" + fmt(g.top + 14 + 14 * c) +
                   "\" text-anchor=\"end\">k=" + std::to_string(overlay[c].k) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ratiochart
