#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace selfception {

struct Color3 {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

// 3-channel raster, row-major RGB interleaved. Samples are stored as doubles
// so that interpolation and the color-shift arithmetic never quantize;
// clamping/rounding to 8 bits happens only when encoding to a file.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // width * height * 3

    Image() = default;
    Image(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0.0) {}
    Image(int w, int h, double fill)
        : width(w), height(h), data(static_cast<size_t>(w) * h * 3, fill) {}

    size_t pixel_count() const { return static_cast<size_t>(width) * height; }

    double* px(int x, int y) { return data.data() + 3 * (static_cast<size_t>(y) * width + x); }
    const double* px(int x, int y) const {
        return data.data() + 3 * (static_cast<size_t>(y) * width + x);
    }

    Color3 at(int x, int y) const {
        const double* p = px(x, y);
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, const Color3& c) {
        double* p = px(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }

    bool operator==(const Image& o) const = default;
};

// Row-major (L, a, b) triples. L in [0,100], a/b roughly [-128,127].
struct LabImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    LabImage() = default;
    LabImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0.0) {}

    const double* px(int x, int y) const {
        return data.data() + 3 * (static_cast<size_t>(y) * width + x);
    }
    double* px(int x, int y) { return data.data() + 3 * (static_cast<size_t>(y) * width + x); }
};

// Bilinear resize with center-aligned sampling and edge clamping.
Image resize_bilinear(const Image& img, int out_w, int out_h);

// Inverse-mapped rotation about the output center (bilinear sampling).
// Positive angle turns image content from +x toward +y. Pixels that map
// outside the source take `fill`.
Image rotate_image(const Image& img, double angle, int out_w, int out_h, const Color3& fill);

Color3 mean_color(const Image& img);

// Mean over exactly the given (x, y) pixel coordinates.
Color3 masked_mean_color(const Image& img, std::span<const std::pair<int, int>> mask);

// Mean squared error over all pixels and channels, on the 0..255 sample scale.
double mse(const Image& a, const Image& b);

// sRGB -> linear RGB -> XYZ (D65) -> CIELAB.
LabImage rgb_to_lab(const Image& img);
Color3 srgb_to_lab(const Color3& rgb);

}  // namespace selfception
