#include "selfception/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "selfception/errors.hpp"

namespace selfception {

std::vector<RegionStats> region_stats(const LabelMap& labels, const Image& img) {
    if (labels.width != img.width || labels.height != img.height) {
        throw DimensionError("region_stats: label map and image dimensions differ");
    }
    const int k = labels.region_count;
    std::vector<RegionStats> stats(k);
    std::vector<double> sx(k, 0.0), sy(k, 0.0);
    std::vector<double> sr(k, 0.0), sg(k, 0.0), sb(k, 0.0);

    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            const int l = labels.at(x, y);
            ++stats[l].area;
            sx[l] += x;
            sy[l] += y;
            const double* p = img.px(x, y);
            sr[l] += p[0];
            sg[l] += p[1];
            sb[l] += p[2];
        }
    }
    for (int l = 0; l < k; ++l) {
        stats[l].label = l;
        const double n = static_cast<double>(stats[l].area);
        stats[l].cx = sx[l] / n;
        stats[l].cy = sy[l] / n;
        stats[l].mean_color = {sr[l] / n, sg[l] / n, sb[l] / n};
    }
    // second pass about the exact centroid, avoids catastrophic cancellation
    // in the raw-moment shortcut
    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            const int l = labels.at(x, y);
            const double dx = x - stats[l].cx;
            const double dy = y - stats[l].cy;
            stats[l].mu20 += dx * dx;
            stats[l].mu02 += dy * dy;
            stats[l].mu11 += dx * dy;
        }
    }
    for (int l = 0; l < k; ++l) {
        const double n = static_cast<double>(stats[l].area);
        stats[l].mu20 /= n;
        stats[l].mu02 /= n;
        stats[l].mu11 /= n;
    }
    return stats;
}

Ellipse fit_ellipse(const RegionStats& stats) {
    const double tr = stats.mu20 + stats.mu02;
    const double diff = stats.mu20 - stats.mu02;
    const double disc = std::sqrt(diff * diff + 4.0 * stats.mu11 * stats.mu11);
    const double l1 = std::max(0.0, 0.5 * (tr + disc));
    const double l2 = std::max(0.0, 0.5 * (tr - disc));

    Ellipse e;
    e.cx = stats.cx;
    e.cy = stats.cy;
    e.a = std::max(2.0 * std::sqrt(l1), 0.5);
    e.b = std::max(2.0 * std::sqrt(l2), 0.5);
    if (stats.mu11 == 0.0 && diff == 0.0) {
        e.theta = 0.0;  // isotropic
    } else {
        e.theta = 0.5 * std::atan2(2.0 * stats.mu11, diff);
        constexpr double half_pi = std::numbers::pi / 2.0;
        if (e.theta <= -half_pi) e.theta += std::numbers::pi;
        if (e.theta > half_pi) e.theta -= std::numbers::pi;
    }
    return e;
}

Rect ellipse_bbox(const Ellipse& e, const Rect& bounds) {
    const double c = std::cos(e.theta);
    const double s = std::sin(e.theta);
    const double hx = std::sqrt(e.a * e.a * c * c + e.b * e.b * s * s);
    const double hy = std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
    int x0 = static_cast<int>(std::floor(e.cx - hx));
    int x1 = static_cast<int>(std::ceil(e.cx + hx));
    int y0 = static_cast<int>(std::floor(e.cy - hy));
    int y1 = static_cast<int>(std::ceil(e.cy + hy));
    x0 = std::max(x0, bounds.x0);
    y0 = std::max(y0, bounds.y0);
    x1 = std::min(x1, bounds.x1);
    y1 = std::min(y1, bounds.y1);
    if (x0 > x1 || y0 > y1) {
        // fully outside: collapse to the clamped center pixel
        const int cx = std::clamp(static_cast<int>(std::lround(e.cx)), bounds.x0, bounds.x1);
        const int cy = std::clamp(static_cast<int>(std::lround(e.cy)), bounds.y0, bounds.y1);
        return {cx, cy, cx, cy};
    }
    return {x0, y0, x1, y1};
}

bool point_in_ellipse(const Ellipse& e, int x, int y) {
    const double dx = x - e.cx;
    const double dy = y - e.cy;
    const double c = std::cos(e.theta);
    const double s = std::sin(e.theta);
    const double u = (dx * c + dy * s) / e.a;
    const double v = (-dx * s + dy * c) / e.b;
    return u * u + v * v <= 1.0;
}

Image draw_ellipses(const Image& img, const std::vector<Ellipse>& ellipses, const Color3& color) {
    Image out = img;
    for (const Ellipse& e : ellipses) {
        const double c = std::cos(e.theta);
        const double s = std::sin(e.theta);
        const double perim = 2.0 * std::numbers::pi * std::max(e.a, 1.0);
        const int steps = std::max(16, static_cast<int>(std::ceil(perim * 2.0)));
        for (int i = 0; i < steps; ++i) {
            const double t = 2.0 * std::numbers::pi * i / steps;
            const double px = e.a * std::cos(t);
            const double py = e.b * std::sin(t);
            const int x = static_cast<int>(std::lround(e.cx + px * c - py * s));
            const int y = static_cast<int>(std::lround(e.cy + px * s + py * c));
            if (x >= 0 && x < out.width && y >= 0 && y < out.height) {
                out.set(x, y, color);
            }
        }
    }
    return out;
}

}  // namespace selfception
