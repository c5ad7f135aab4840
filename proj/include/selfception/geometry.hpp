#pragma once

#include <vector>

#include "selfception/image.hpp"
#include "selfception/slic.hpp"

namespace selfception {

struct RegionStats {
    int label = 0;
    long long area = 0;
    double cx = 0.0, cy = 0.0;        // centroid
    double mu20 = 0.0, mu02 = 0.0, mu11 = 0.0;  // per-area central moments
    Color3 mean_color;
};

// theta in (-pi/2, pi/2], measured from +x toward +y (y grows downward).
struct Ellipse {
    double cx = 0.0, cy = 0.0;
    double a = 0.5;  // semi-major
    double b = 0.5;  // semi-minor
    double theta = 0.0;
};

// Inclusive integer pixel bounds.
struct Rect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
};

// One entry per label, in label order.
std::vector<RegionStats> region_stats(const LabelMap& labels, const Image& img);

// Equivalent ellipse from the second-moment matrix: semi-axes 2*sqrt(lambda),
// clamped at 0.5 px for degenerate regions.
Ellipse fit_ellipse(const RegionStats& stats);

// Tight axis-aligned box of the rotated ellipse, intersected with bounds.
// An empty intersection collapses to the clamped center pixel.
Rect ellipse_bbox(const Ellipse& e, const Rect& bounds);

// Boundary-inclusive test of the integer coordinate (x, y).
bool point_in_ellipse(const Ellipse& e, int x, int y);

// Debug overlay: ellipse outlines drawn over a copy of the image.
Image draw_ellipses(const Image& img, const std::vector<Ellipse>& ellipses,
                    const Color3& color = {255, 0, 0});

}  // namespace selfception
