#include "hours_effect/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hours_effect {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string esc(const std::string& s) {
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

struct Frame {
    double x0, x1, y0, y1;     // data range
    double px0, px1, py0, py1; // pixel box (py0 = top)

    double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double py(double y) const { return py1 - (y - y0) / (y1 - y0) * (py1 - py0); }
};

void axes(std::string& s, const Frame& f, const std::string& xlab, const std::string& ylab) {
    s += "<rect x='" + num(f.px0) + "' y='" + num(f.py0) + "' width='" + num(f.px1 - f.px0) +
         "' height='" + num(f.py1 - f.py0) + "' fill='none' stroke='#444' stroke-width='1'/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = f.x0 + t * (f.x1 - f.x0) / 4.0;
        const double fy = f.y0 + t * (f.y1 - f.y0) / 4.0;
        s += "<text x='" + num(f.px(fx)) + "' y='" + num(f.py1 + 16.0) +
             "' font-size='10' text-anchor='middle' fill='#333'>" + num(fx) + "</text>\n";
        s += "<text x='" + num(f.px0 - 6.0) + "' y='" + num(f.py(fy) + 3.0) +
             "' font-size='10' text-anchor='end' fill='#333'>" + num(fy) + "</text>\n";
    }
    s += "<text x='" + num((f.px0 + f.px1) / 2.0) + "' y='" + num(f.py1 + 32.0) +
         "' font-size='11' text-anchor='middle' fill='#111'>" + esc(xlab) + "</text>\n";
    s += "<text x='" + num(f.px0 - 42.0) + "' y='" + num((f.py0 + f.py1) / 2.0) +
         "' font-size='11' text-anchor='middle' fill='#111' transform='rotate(-90 " +
         num(f.px0 - 42.0) + " " + num((f.py0 + f.py1) / 2.0) + ")'>" + esc(ylab) + "</text>\n";
}

} // namespace

std::string curve_svg(const CapResponse& curve, const std::vector<SvgMarker>& markers,
                      const std::string& title) {
    const int W = 640, H = 420;
    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(W) +
                    "' height='" + std::to_string(H) + "' viewBox='0 0 " + std::to_string(W) +
                    " " + std::to_string(H) + "'>\n";
    s += "<rect width='100%' height='100%' fill='white'/>\n";
    s += "<text x='" + num(W / 2.0) + "' y='22' font-size='14' text-anchor='middle' "
         "fill='#111'>" + esc(title) + "</text>\n";

    if (!curve.points.empty()) {
        double ymin = curve.points.front().employment, ymax = ymin;
        for (const auto& pt : curve.points) {
            ymin = std::min(ymin, pt.employment);
            ymax = std::max(ymax, pt.employment);
        }
        const double pad = (ymax > ymin ? (ymax - ymin) : std::max(std::abs(ymax), 1.0)) * 0.08;
        Frame f{curve.points.front().cap, curve.points.back().cap, ymin - pad, ymax + pad,
                70.0, W - 20.0, 40.0, H - 50.0};
        axes(s, f, "hours cap", "employment");

        std::string pts;
        for (const auto& pt : curve.points) {
            if (!pts.empty()) pts += ' ';
            pts += num(f.px(pt.cap)) + "," + num(f.py(pt.employment));
        }
        s += "<polyline fill='none' stroke='#0a61a4' stroke-width='1.5' points='" + pts + "'/>\n";

        for (const auto& mk : markers) {
            const double x = f.px(mk.x);
            s += "<line x1='" + num(x) + "' y1='" + num(f.py0) + "' x2='" + num(x) + "' y2='" +
                 num(f.py1) + "' stroke='#c23b22' stroke-width='1' stroke-dasharray='4,3'/>\n";
            s += "<text x='" + num(x + 3.0) + "' y='" + num(f.py0 + 12.0) +
                 "' font-size='11' fill='#c23b22'>" + esc(mk.label) + "</text>\n";
        }
    }
    s += "</svg>\n";
    return s;
}

std::string forest_svg(std::span<const StudyObservation> obs, const MetaResult& result,
                       const std::string& title) {
    const int W = 640;
    const int row_h = 22;
    const int top = 46, bottom = 56;
    const int H = top + row_h * static_cast<int>(obs.size()) + bottom;
    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(W) +
                    "' height='" + std::to_string(H) + "' viewBox='0 0 " + std::to_string(W) +
                    " " + std::to_string(H) + "'>\n";
    s += "<rect width='100%' height='100%' fill='white'/>\n";
    s += "<text x='" + num(W / 2.0) + "' y='22' font-size='14' text-anchor='middle' "
         "fill='#111'>" + esc(title) + "</text>\n";
    if (obs.empty()) return s + "</svg>\n";

    double xmin = result.ci_low, xmax = result.ci_high;
    double total_n = 0.0;
    for (const auto& o : obs) {
        xmin = std::min(xmin, o.elasticity);
        xmax = std::max(xmax, o.elasticity);
        total_n += static_cast<double>(o.sample_size);
    }
    const double pad = (xmax - xmin) * 0.08 + 1e-9;
    xmin -= pad;
    xmax += pad;
    const double px0 = 210.0, px1 = W - 90.0;
    auto px = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    const double py0 = static_cast<double>(top);
    const double py1 = static_cast<double>(top + row_h * static_cast<int>(obs.size()));

    // interval band and pooled mean
    s += "<rect x='" + num(px(result.ci_low)) + "' y='" + num(py0) + "' width='" +
         num(px(result.ci_high) - px(result.ci_low)) + "' height='" + num(py1 - py0) +
         "' fill='#f3d9a4' fill-opacity='0.5'/>\n";
    s += "<line x1='" + num(px(result.r_bar)) + "' y1='" + num(py0) + "' x2='" +
         num(px(result.r_bar)) + "' y2='" + num(py1) + "' stroke='#c23b22' stroke-width='1.2'/>\n";
    if (xmin < 0.0 && xmax > 0.0)
        s += "<line x1='" + num(px(0.0)) + "' y1='" + num(py0) + "' x2='" + num(px(0.0)) +
             "' y2='" + num(py1) + "' stroke='#999' stroke-width='0.8' "
             "stroke-dasharray='2,3'/>\n";

    for (std::size_t i = 0; i < obs.size(); ++i) {
        const auto& o = obs[i];
        const double cy = py0 + row_h * (static_cast<double>(i) + 0.5);
        const double share = static_cast<double>(o.sample_size) / total_n;
        const double half = std::max(2.0, 9.0 * std::sqrt(share));
        s += "<text x='" + num(px0 - 10.0) + "' y='" + num(cy + 3.5) +
             "' font-size='10' text-anchor='end' fill='#333'>" + esc(o.study_label) + " (" +
             esc(o.group_tag) + ")</text>\n";
        s += "<rect x='" + num(px(o.elasticity) - half) + "' y='" + num(cy - half) +
             "' width='" + num(2.0 * half) + "' height='" + num(2.0 * half) +
             "' fill='#0a61a4'/>\n";
        s += "<text x='" + num(px1 + 8.0) + "' y='" + num(cy + 3.5) +
             "' font-size='10' fill='#333'>" + num(o.elasticity) + "</text>\n";
    }

    for (int t = 0; t <= 4; ++t) {
        const double fx = xmin + t * (xmax - xmin) / 4.0;
        s += "<line x1='" + num(px(fx)) + "' y1='" + num(py1) + "' x2='" + num(px(fx)) +
             "' y2='" + num(py1 + 4.0) + "' stroke='#444'/>\n";
        s += "<text x='" + num(px(fx)) + "' y='" + num(py1 + 16.0) +
             "' font-size='10' text-anchor='middle' fill='#333'>" + num(fx) + "</text>\n";
    }
    s += "<text x='" + num((px0 + px1) / 2.0) + "' y='" + num(py1 + 34.0) +
         "' font-size='11' text-anchor='middle' fill='#111'>elasticity (pooled mean " +
         num(result.r_bar) + ", interval " + num(result.ci_low) + " to " + num(result.ci_high) +
         ")</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace hours_effect
