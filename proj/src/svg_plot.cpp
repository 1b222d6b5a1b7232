#include "coopdef/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace coopdef::svg {

namespace {

constexpr int kLeft = 78, kRight = 150, kTop = 34, kBottom = 46;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v, double step) {
    if (std::abs(v) < step * 1e-9) v = 0.0;
    char buf[32];
    int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
    if (std::abs(v) >= 1e5 || (v != 0.0 && std::abs(v) < 1e-4))
        std::snprintf(buf, sizeof buf, "%.2g", v);
    else
        std::snprintf(buf, sizeof buf, "%.*f", std::min(decimals, 6), v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(lo))) {
            double pad = std::max(1e-6, std::abs(lo) * 0.05);
            lo -= pad;
            hi += pad;
        }
    }
};

struct Frame {
    double x0, y0, w, h;  // pixel box
    double xlo, xhi, ylo, yhi;
    double px(double x) const { return x0 + (x - xlo) / (xhi - xlo) * w; }
    double py(double y) const { return y0 + h - (y - ylo) / (yhi - ylo) * h; }
};

void expand_to_ticks(double& lo, double& hi, std::vector<double>& ticks) {
    ticks = nice_ticks(lo, hi);
    if (ticks.empty()) return;
    lo = std::min(lo, ticks.front());
    hi = std::max(hi, ticks.back());
}

void axes(std::string& out, const Frame& f, const std::vector<double>& xt, const std::vector<double>& yt,
          const std::string& title, const std::string& xl, const std::string& yl) {
    out += "<rect x=\"" + num(f.x0) + "\" y=\"" + num(f.y0) + "\" width=\"" + num(f.w) +
           "\" height=\"" + num(f.h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    const double xstep = xt.size() > 1 ? xt[1] - xt[0] : 1.0;
    const double ystep = yt.size() > 1 ? yt[1] - yt[0] : 1.0;
    for (double t : xt) {
        if (t < f.xlo - 1e-9 * xstep || t > f.xhi + 1e-9 * xstep) continue;
        double x = f.px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(f.y0) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(f.y0 + f.h) + "\" stroke=\"#e3e3e3\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(f.y0 + f.h + 16) +
               "\" text-anchor=\"middle\">" + tick_label(t, xstep) + "</text>\n";
    }
    for (double t : yt) {
        if (t < f.ylo - 1e-9 * ystep || t > f.yhi + 1e-9 * ystep) continue;
        double y = f.py(t);
        out += "<line x1=\"" + num(f.x0) + "\" y1=\"" + num(y) + "\" x2=\"" + num(f.x0 + f.w) +
               "\" y2=\"" + num(y) + "\" stroke=\"#e3e3e3\"/>\n";
        out += "<text x=\"" + num(f.x0 - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
               tick_label(t, ystep) + "</text>\n";
    }
    out += "<text x=\"" + num(f.x0 + f.w / 2) + "\" y=\"" + num(f.y0 - 10) +
           "\" text-anchor=\"middle\" font-weight=\"bold\">" + escape(title) + "</text>\n";
    out += "<text x=\"" + num(f.x0 + f.w / 2) + "\" y=\"" + num(f.y0 + f.h + 34) +
           "\" text-anchor=\"middle\">" + escape(xl) + "</text>\n";
    const double ym = f.y0 + f.h / 2;
    out += "<text x=\"" + num(f.x0 - 60) + "\" y=\"" + num(ym) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           num(f.x0 - 60) + " " + num(ym) + ")\">" + escape(yl) + "</text>\n";
}

std::string header(int w, int h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
           std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
    std::vector<double> ticks;
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return ticks;
    const double raw = (hi - lo) / std::max(1, target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    const double first = std::floor(lo / step) * step;
    for (int i = 0; i < 1000; ++i) {
        double t = first + i * step;
        if (t > hi + step * 0.999) break;
        ticks.push_back(t);
    }
    return ticks;
}

std::string line_plot(const std::vector<Panel>& panels, int width, int panel_height, std::size_t max_points) {
    const int height = static_cast<int>(panels.size()) * panel_height;
    std::string out = header(width, height);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& pn = panels[p];
        Range xr, yr;
        for (const auto& s : pn.series) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!std::isfinite(s.y[i])) continue;
                xr.add(s.x[i]);
                yr.add(s.y[i]);
            }
        }
        xr.finish();
        yr.finish();
        Frame f{kLeft, static_cast<double>(p * panel_height + kTop), static_cast<double>(width - kLeft - kRight),
                static_cast<double>(panel_height - kTop - kBottom), xr.lo, xr.hi, yr.lo, yr.hi};
        if (pn.equal_aspect) {
            // widen whichever axis is short so one meter is the same on both
            const double sx = (f.xhi - f.xlo) / f.w, sy = (f.yhi - f.ylo) / f.h;
            if (sx > sy) {
                const double mid = 0.5 * (f.ylo + f.yhi), half = 0.5 * sx * f.h;
                f.ylo = mid - half;
                f.yhi = mid + half;
            } else {
                const double mid = 0.5 * (f.xlo + f.xhi), half = 0.5 * sy * f.w;
                f.xlo = mid - half;
                f.xhi = mid + half;
            }
        }
        std::vector<double> xt = nice_ticks(f.xlo, f.xhi), yt = nice_ticks(f.ylo, f.yhi);
        if (!pn.equal_aspect) {
            expand_to_ticks(f.xlo, f.xhi, xt);
            expand_to_ticks(f.ylo, f.yhi, yt);
            f.xlo = xr.lo;
            f.xhi = xr.hi;
        }
        axes(out, f, xt, yt, pn.title, pn.x_label, pn.y_label);

        for (std::size_t k = 0; k < pn.series.size(); ++k) {
            const Series& s = pn.series[k];
            const std::size_t n = std::min(s.x.size(), s.y.size());
            const std::size_t stride = std::max<std::size_t>(1, (n + max_points - 1) / max_points);
            std::string d;
            bool pen = false;
            for (std::size_t i = 0; i < n; i += stride) {
                std::size_t j = (i + stride >= n) ? n - 1 : i;
                if (!std::isfinite(s.y[j]) || !std::isfinite(s.x[j])) {
                    pen = false;
                    continue;
                }
                d += (pen ? " L" : " M") + num(f.px(s.x[j])) + " " + num(f.py(s.y[j]));
                pen = true;
            }
            if (!d.empty())
                out += "<path d=\"" + d.substr(1) + "\" fill=\"none\" stroke=\"" + s.color +
                       "\" stroke-width=\"1.4\"/>\n";
            const double ly = f.y0 + 12 + 16.0 * k;
            const double lx = f.x0 + f.w + 12;
            out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 18) + "\" y2=\"" +
                   num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + num(lx + 24) + "\" y=\"" + num(ly) + "\">" + escape(s.label) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

std::string scatter_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                         const std::vector<ScatterGroup>& groups, int width, int height) {
    std::string out = header(width, height);
    Range xr, yr;
    for (const auto& g : groups)
        for (std::size_t i = 0; i < g.x.size() && i < g.y.size(); ++i) {
            xr.add(g.x[i]);
            yr.add(g.y[i]);
        }
    xr.finish();
    yr.finish();
    Frame f{kLeft, kTop, static_cast<double>(width - kLeft - kRight), static_cast<double>(height - kTop - kBottom),
            xr.lo, xr.hi, yr.lo, yr.hi};
    std::vector<double> xt, yt;
    expand_to_ticks(f.xlo, f.xhi, xt);
    expand_to_ticks(f.ylo, f.yhi, yt);
    axes(out, f, xt, yt, title, x_label, y_label);
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const auto& g = groups[k];
        for (std::size_t i = 0; i < g.x.size() && i < g.y.size(); ++i) {
            if (!std::isfinite(g.x[i]) || !std::isfinite(g.y[i])) continue;
            out += "<circle cx=\"" + num(f.px(g.x[i])) + "\" cy=\"" + num(f.py(g.y[i])) + "\" r=\"2.5\" fill=\"" +
                   g.color + "\"/>\n";
        }
        const double ly = f.y0 + 12 + 16.0 * k;
        const double lx = f.x0 + f.w + 12;
        out += "<circle cx=\"" + num(lx + 6) + "\" cy=\"" + num(ly - 4) + "\" r=\"4\" fill=\"" + g.color + "\"/>\n";
        out += "<text x=\"" + num(lx + 16) + "\" y=\"" + num(ly) + "\">" + escape(g.label) + " (" +
               std::to_string(g.x.size()) + ")</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace coopdef::svg
