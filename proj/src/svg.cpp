#include "strainwave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace strainwave {
namespace svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

// round the raw spacing to 1, 2 or 5 times a power of ten
double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0)
        nice = 1.0;
    else if (frac <= 2.0)
        nice = 2.0;
    else if (frac <= 5.0)
        nice = 5.0;
    return nice * mag;
}

} // namespace

std::string render_line_plot(const PlotSpec& spec, int width, int height) {
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : spec.series) {
        for (double v : s.x) {
            x0 = std::min(x0, v);
            x1 = std::max(x1, v);
        }
        for (double v : s.y) {
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    }
    for (const auto& vl : spec.vlines) {
        x0 = std::min(x0, vl.x);
        x1 = std::max(x1, vl.x);
    }
    if (!std::isfinite(x0) || !std::isfinite(y0)) {
        x0 = y0 = 0.0;
        x1 = y1 = 1.0;
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    const double ypad = 0.06 * (y1 - y0);
    y0 -= ypad;
    y1 += ypad;

    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return mt + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
       << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" font-size=\"16\">"
           << escape(spec.title) << "</text>\n";

    // axes frame
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
       << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";

    const double xs = nice_step(x1 - x0, 8);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-12 * xs; t += xs) {
        const double X = px(t);
        os << "<line x1=\"" << num(X) << "\" y1=\"" << num(mt + ph) << "\" x2=\""
           << num(X) << "\" y2=\"" << num(mt + ph + 5) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << num(X) << "\" y=\"" << num(mt + ph + 20)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << num(t) << "</text>\n";
    }
    const double ys = nice_step(y1 - y0, 6);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-12 * ys; t += ys) {
        const double Y = py(t);
        os << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(Y) << "\" x2=\""
           << num(ml) << "\" y2=\"" << num(Y) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(Y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << num(t) << "</text>\n";
        os << "<line x1=\"" << num(ml) << "\" y1=\"" << num(Y) << "\" x2=\""
           << num(ml + pw) << "\" y2=\"" << num(Y)
           << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    }

    if (!spec.xlabel.empty())
        os << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(height - 12)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
           << escape(spec.xlabel) << "</text>\n";
    if (!spec.ylabel.empty())
        os << "<text x=\"16\" y=\"" << num(mt + ph / 2)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
              "transform=\"rotate(-90 16 "
           << num(mt + ph / 2) << ")\">" << escape(spec.ylabel) << "</text>\n";

    for (const auto& vl : spec.vlines) {
        const double X = px(vl.x);
        os << "<line x1=\"" << num(X) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(X)
           << "\" y2=\"" << num(mt + ph)
           << "\" stroke=\"#b40\" stroke-dasharray=\"5,4\"/>\n";
        if (!vl.label.empty())
            os << "<text x=\"" << num(X + 4) << "\" y=\"" << num(mt + 14)
               << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#b40\">"
               << escape(vl.label) << "</text>\n";
    }

    for (const auto& s : spec.series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color
           << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) os << ' ';
            os << num(px(s.x[i])) << ',' << num(py(s.y[i]));
        }
        os << "\"/>\n";
    }

    double ly = mt + 16;
    for (const auto& s : spec.series) {
        if (s.label.empty()) continue;
        os << "<line x1=\"" << num(ml + pw - 150) << "\" y1=\"" << num(ly - 4)
           << "\" x2=\"" << num(ml + pw - 125) << "\" y2=\"" << num(ly - 4)
           << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(ml + pw - 118) << "\" y=\"" << num(ly)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
           << "</text>\n";
        ly += 18;
    }

    os << "</svg>\n";
    return os.str();
}

} // namespace svg
} // namespace strainwave
