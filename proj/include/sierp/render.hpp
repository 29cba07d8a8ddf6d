#pragma once

/**
 * @file render.hpp
 * @brief Text and image emitters: attractor point clouds as SVG or CSV, and
 * |μ̂| heatmaps as binary PGM.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "numverify.hpp"

namespace sierp::render {

struct Box {
    double x0 = -4.0, y0 = -4.0, x1 = 4.0, y1 = 4.0;
};

inline Box bounding_box(const std::vector<numeric::Vec2>& pts) {
    if (pts.empty()) return {0, 0, 1, 1};
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const auto& p : pts) {
        b.x0 = std::min(b.x0, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.x1 = std::max(b.x1, p.x);
        b.y1 = std::max(b.y1, p.y);
    }
    return b;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Maps the bounding box onto a size x size viewport (y up) with a small margin.
inline void write_svg(std::ostream& os, const std::vector<numeric::Vec2>& pts, int size = 1024) {
    const Box b = bounding_box(pts);
    const double margin = 8.0;
    const double span = std::max({b.x1 - b.x0, b.y1 - b.y0, 1e-12});
    const double scale = (size - 2 * margin) / span;
    const double r = std::max(0.5, std::min(3.0, 600.0 / std::sqrt(double(std::max<std::size_t>(pts.size(), 1)))));
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
       << size << ' ' << size << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"black\">\n";
    for (const auto& p : pts) {
        const double x = margin + (p.x - b.x0) * scale;
        const double y = size - margin - (p.y - b.y0) * scale;
        os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

inline void write_csv(std::ostream& os, const std::vector<numeric::Vec2>& pts) {
    char buf[64];
    os << "x,y\n";
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", p.x, p.y);
        os << buf;
    }
}

/// |μ̂| sampled at pixel centres of `box`, row 0 at the top.
inline std::vector<double> heatmap(const numeric::FourierEvaluator& f, const Box& box, int size, double eps) {
    std::vector<double> v(static_cast<std::size_t>(size) * size);
    numeric::parallel_for(static_cast<std::size_t>(size), [&](std::size_t row) {
        const double y = box.y1 - (double(row) + 0.5) * (box.y1 - box.y0) / size;
        for (int col = 0; col < size; ++col) {
            const double x = box.x0 + (double(col) + 0.5) * (box.x1 - box.x0) / size;
            v[row * size + col] = std::abs(f({x, y}, eps).value);
        }
    });
    return v;
}

/// Binary P5, 8-bit grey, 255 = |μ̂| of 1.
inline void write_pgm(std::ostream& os, const std::vector<double>& values, int size) {
    os << "P5\n" << size << ' ' << size << "\n255\n";
    for (double v : values) {
        const auto g = static_cast<std::uint8_t>(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
        os.put(static_cast<char>(g));
    }
}

}  // namespace sierp::render
