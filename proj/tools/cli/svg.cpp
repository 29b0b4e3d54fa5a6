#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tailband::cli {

namespace {

constexpr double width = 720.0;
constexpr double height = 480.0;
constexpr double left = 70.0;
constexpr double right = 20.0;
constexpr double top = 40.0;
constexpr double bottom = 50.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Frame {
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity();
    double y1 = -std::numeric_limits<double>::infinity();

    void cover(double x, double y)
    {
        if (std::isfinite(x) && std::isfinite(y)) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

}  // namespace

std::string render_svg(const PlotSet& plot, const std::vector<ConfidenceBand>& bands,
                       const std::optional<ReferenceLine>& line, const std::string& title)
{
    Frame f;
    for (const auto& p : plot.points) {
        f.cover(p.x, p.y);
    }
    for (const auto& b : bands) {
        for (std::size_t i = 0; i < b.base.points.size(); ++i) {
            const auto& p = b.base.points[i];
            const auto& o = b.offsets[i];
            f.cover(p.x + o.dx_lo, p.y + o.dy_lo);
            f.cover(p.x + o.dx_hi, p.y + o.dy_hi);
        }
    }
    if (!(f.x1 > f.x0)) {
        f.x0 -= 1.0;
        f.x1 += 1.0;
    }
    if (!(f.y1 > f.y0)) {
        f.y0 -= 1.0;
        f.y1 += 1.0;
    }

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + escape(title) + "</text>\n";

    static constexpr const char* shades[] = {"#c6dbef", "#6baed6", "#2171b5"};
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const auto& band = bands[b];
        const char* fill = shades[std::min<std::size_t>(b + (3 - std::min<std::size_t>(bands.size(), 3)), 2)];
        s += "<g fill=\"" + std::string(fill) + "\" fill-opacity=\"0.6\" stroke=\"none\">\n";
        for (std::size_t i = 0; i < band.base.points.size(); ++i) {
            const auto& p = band.base.points[i];
            const auto& o = band.offsets[i];
            const double xa = f.px(p.x + o.dx_lo);
            const double xb = f.px(p.x + o.dx_hi);
            const double ya = f.py(p.y + o.dy_hi);
            const double yb = f.py(p.y + o.dy_lo);
            s += "<rect x=\"" + num(xa - (xb - xa < 1.0 ? 0.5 : 0.0)) + "\" y=\"" + num(ya) + "\" width=\"" +
                 num(std::max(xb - xa, 1.0)) + "\" height=\"" + num(std::max(yb - ya, 0.5)) + "\"/>\n";
        }
        s += "</g>\n";
    }

    s += "<g stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(height - bottom) + "\" x2=\"" + num(width - right) +
         "\" y2=\"" + num(height - bottom) + "\"/>\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(height - bottom) + "\"/>\n";
    s += "</g>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<text x=\"" + num(left) + "\" y=\"" + num(height - bottom + 16) + "\">" + num(f.x0) + "</text>\n";
    s += "<text x=\"" + num(width - right) + "\" y=\"" + num(height - bottom + 16) +
         "\" text-anchor=\"end\">" + num(f.x1) + "</text>\n";
    s += "<text x=\"" + num(left - 4) + "\" y=\"" + num(height - bottom) + "\" text-anchor=\"end\">" + num(f.y0) +
         "</text>\n";
    s += "<text x=\"" + num(left - 4) + "\" y=\"" + num(top + 10) + "\" text-anchor=\"end\">" + num(f.y1) +
         "</text>\n";
    s += "</g>\n";

    if (line) {
        const double ya = line->intercept + line->slope * f.x0;
        const double yb = line->intercept + line->slope * f.x1;
        s += "<line x1=\"" + num(f.px(f.x0)) + "\" y1=\"" + num(f.py(ya)) + "\" x2=\"" + num(f.px(f.x1)) +
             "\" y2=\"" + num(f.py(yb)) + "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    }

    s += "<g fill=\"black\">\n";
    for (const auto& p : plot.points) {
        if (std::isfinite(p.x) && std::isfinite(p.y)) {
            s += "<circle cx=\"" + num(f.px(p.x)) + "\" cy=\"" + num(f.py(p.y)) + "\" r=\"1.5\"/>\n";
        }
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace tailband::cli
