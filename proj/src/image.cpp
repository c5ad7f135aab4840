#include "selfception/image.hpp"

#include <algorithm>
#include <cmath>

#include "selfception/errors.hpp"

namespace selfception {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Bilinear sample at real coordinates, neighbors clamped to the image edge.
inline void sample_bilinear(const Image& img, double sx, double sy, double out[3]) {
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const double fx = sx - x0;
    const double fy = sy - y0;
    const int cx0 = clampi(x0, 0, img.width - 1);
    const int cx1 = clampi(x0 + 1, 0, img.width - 1);
    const int cy0 = clampi(y0, 0, img.height - 1);
    const int cy1 = clampi(y0 + 1, 0, img.height - 1);
    const double* p00 = img.px(cx0, cy0);
    const double* p10 = img.px(cx1, cy0);
    const double* p01 = img.px(cx0, cy1);
    const double* p11 = img.px(cx1, cy1);
    // nested lerps so a constant neighborhood reproduces the constant exactly
    for (int c = 0; c < 3; ++c) {
        const double top = p00[c] + fx * (p10[c] - p00[c]);
        const double bot = p01[c] + fx * (p11[c] - p01[c]);
        out[c] = top + fy * (bot - top);
    }
}

}  // namespace

Image resize_bilinear(const Image& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) {
        throw DimensionError("resize_bilinear: target size must be at least 1x1");
    }
    if (out_w == img.width && out_h == img.height) {
        return img;
    }
    Image out(out_w, out_h);
    const double sx_scale = static_cast<double>(img.width) / out_w;
    const double sy_scale = static_cast<double>(img.height) / out_h;
    for (int y = 0; y < out_h; ++y) {
        const double sy = (y + 0.5) * sy_scale - 0.5;
        for (int x = 0; x < out_w; ++x) {
            const double sx = (x + 0.5) * sx_scale - 0.5;
            sample_bilinear(img, sx, sy, out.px(x, y));
        }
    }
    return out;
}

Image rotate_image(const Image& img, double angle, int out_w, int out_h, const Color3& fill) {
    if (out_w < 1 || out_h < 1) {
        throw DimensionError("rotate_image: target size must be at least 1x1");
    }
    Image out(out_w, out_h);
    const double cosa = std::cos(angle);
    const double sina = std::sin(angle);
    const double ocx = (out_w - 1) * 0.5;
    const double ocy = (out_h - 1) * 0.5;
    const double icx = (img.width - 1) * 0.5;
    const double icy = (img.height - 1) * 0.5;
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            const double dx = x - ocx;
            const double dy = y - ocy;
            // inverse rotation of the output offset into source coordinates
            const double sx = cosa * dx + sina * dy + icx;
            const double sy = -sina * dx + cosa * dy + icy;
            double* p = out.px(x, y);
            if (sx < -0.5 || sx > img.width - 0.5 || sy < -0.5 || sy > img.height - 0.5) {
                p[0] = fill.r;
                p[1] = fill.g;
                p[2] = fill.b;
            } else {
                sample_bilinear(img, sx, sy, p);
            }
        }
    }
    return out;
}

Color3 mean_color(const Image& img) {
    double sum[3] = {0.0, 0.0, 0.0};
    const size_t n = img.pixel_count();
    for (size_t i = 0; i < n; ++i) {
        const double* p = img.data.data() + 3 * i;
        sum[0] += p[0];
        sum[1] += p[1];
        sum[2] += p[2];
    }
    return {sum[0] / n, sum[1] / n, sum[2] / n};
}

Color3 masked_mean_color(const Image& img, std::span<const std::pair<int, int>> mask) {
    if (mask.empty()) {
        throw EmptyMaskError("masked_mean_color: empty mask");
    }
    double sum[3] = {0.0, 0.0, 0.0};
    for (const auto& [x, y] : mask) {
        const double* p = img.px(x, y);
        sum[0] += p[0];
        sum[1] += p[1];
        sum[2] += p[2];
    }
    const double n = static_cast<double>(mask.size());
    return {sum[0] / n, sum[1] / n, sum[2] / n};
}

double mse(const Image& a, const Image& b) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionError("mse: image dimensions differ");
    }
    double acc = 0.0;
    const size_t n = a.data.size();
    for (size_t i = 0; i < n; ++i) {
        const double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(n);
}

namespace {

inline double srgb_to_linear(double c8) {
    const double c = c8 / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double lab_f(double t) {
    constexpr double eps = 216.0 / 24389.0;
    constexpr double kappa = 24389.0 / 27.0;
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

}  // namespace

Color3 srgb_to_lab(const Color3& rgb) {
    const double r = srgb_to_linear(rgb.r);
    const double g = srgb_to_linear(rgb.g);
    const double b = srgb_to_linear(rgb.b);
    // sRGB primaries under D65
    const double X = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double Y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double Z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    // reference white = matrix row sums, so pure white lands exactly on L=100
    const double fx = lab_f(X / 0.9504700);
    const double fy = lab_f(Y / 1.0000001);
    const double fz = lab_f(Z / 1.0888300);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabImage rgb_to_lab(const Image& img) {
    LabImage out(img.width, img.height);
    const size_t n = img.pixel_count();
    for (size_t i = 0; i < n; ++i) {
        const double* p = img.data.data() + 3 * i;
        const Color3 lab = srgb_to_lab({p[0], p[1], p[2]});
        double* q = out.data.data() + 3 * i;
        q[0] = lab.r;
        q[1] = lab.g;
        q[2] = lab.b;
    }
    return out;
}

}  // namespace selfception
