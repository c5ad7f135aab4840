#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "selfception/geometry.hpp"
#include "selfception/image.hpp"
#include "selfception/slic.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(SELFCEPTION_TEST_DATA) + "/" + name;
}

inline selfception::Image constant_image(int w, int h, const selfception::Color3& c) {
    selfception::Image img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.set(x, y, c);
    }
    return img;
}

inline selfception::Image make_image(
    int w, int h, const std::function<selfception::Color3(int, int)>& fn) {
    selfception::Image img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.set(x, y, fn(x, y));
    }
    return img;
}

inline selfception::Image random_u8_image(int w, int h, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    selfception::Image img(w, h);
    for (auto& v : img.data) v = dist(rng);
    return img;
}

// independent flood-fill: number of 4-connected components and whether every
// label's pixel set forms exactly one component
struct FloodFillResult {
    int component_count = 0;
    bool labels_connected = true;
    bool labels_dense = true;
};

inline FloodFillResult flood_fill_oracle(const selfception::LabelMap& lm) {
    FloodFillResult res;
    const int w = lm.width, h = lm.height;
    const size_t n = static_cast<size_t>(w) * h;
    std::vector<char> seen(n, 0);
    std::vector<int> comps_per_label(lm.region_count, 0);
    std::vector<size_t> stack;
    for (size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++res.component_count;
        const int32_t lbl = lm.labels[s];
        if (lbl < 0 || lbl >= lm.region_count) {
            res.labels_dense = false;
            continue;
        }
        ++comps_per_label[lbl];
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            const size_t i = stack.back();
            stack.pop_back();
            const int x = static_cast<int>(i % w);
            const int y = static_cast<int>(i / w);
            const long long nb[4] = {x > 0 ? (long long)i - 1 : -1,
                                     x < w - 1 ? (long long)i + 1 : -1,
                                     y > 0 ? (long long)i - w : -1,
                                     y < h - 1 ? (long long)i + w : -1};
            for (long long j : nb) {
                if (j >= 0 && !seen[j] && lm.labels[j] == lbl) {
                    seen[j] = 1;
                    stack.push_back(static_cast<size_t>(j));
                }
            }
        }
    }
    for (int c : comps_per_label) {
        if (c != 1) res.labels_connected = false;
        if (c == 0) res.labels_dense = false;
    }
    return res;
}

// brute-force moment oracle over an explicit pixel set
struct BruteMoments {
    double cx = 0, cy = 0, mu20 = 0, mu02 = 0, mu11 = 0;
    long long area = 0;
};

inline BruteMoments brute_force_moments(const std::vector<std::pair<int, int>>& pixels) {
    BruteMoments m;
    m.area = static_cast<long long>(pixels.size());
    for (const auto& [x, y] : pixels) {
        m.cx += x;
        m.cy += y;
    }
    m.cx /= m.area;
    m.cy /= m.area;
    for (const auto& [x, y] : pixels) {
        m.mu20 += (x - m.cx) * (x - m.cx);
        m.mu02 += (y - m.cy) * (y - m.cy);
        m.mu11 += (x - m.cx) * (y - m.cy);
    }
    m.mu20 /= m.area;
    m.mu02 /= m.area;
    m.mu11 /= m.area;
    return m;
}

// rasterize a mathematical ellipse on an (w x h) grid by the quadratic form,
// written independently of point_in_ellipse
inline std::vector<std::pair<int, int>> rasterize_ellipse(double cx, double cy, double a, double b,
                                                          double theta, int w, int h) {
    std::vector<std::pair<int, int>> pixels;
    const double c = std::cos(theta), s = std::sin(theta);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double u = (dx * c + dy * s) / a;
            const double v = (dy * c - dx * s) / b;
            if (u * u + v * v <= 1.0) pixels.emplace_back(x, y);
        }
    }
    return pixels;
}

// a connected random blob grown from a seed pixel
inline std::vector<std::pair<int, int>> random_blob(int w, int h, int target, std::mt19937& rng) {
    std::vector<char> in(static_cast<size_t>(w) * h, 0);
    std::vector<std::pair<int, int>> pixels;
    std::uniform_int_distribution<int> dx(0, w - 1), dy(0, h - 1);
    int x = dx(rng), y = dy(rng);
    in[static_cast<size_t>(y) * w + x] = 1;
    pixels.emplace_back(x, y);
    std::vector<std::pair<int, int>> frontier{{x, y}};
    while (static_cast<int>(pixels.size()) < target && !frontier.empty()) {
        std::uniform_int_distribution<size_t> pick(0, frontier.size() - 1);
        const auto [fx, fy] = frontier[pick(rng)];
        const int nx[4] = {fx - 1, fx + 1, fx, fx};
        const int ny[4] = {fy, fy, fy - 1, fy + 1};
        const int d = std::uniform_int_distribution<int>(0, 3)(rng);
        const int px = nx[d], py = ny[d];
        if (px >= 0 && px < w && py >= 0 && py < h && !in[static_cast<size_t>(py) * w + px]) {
            in[static_cast<size_t>(py) * w + px] = 1;
            pixels.emplace_back(px, py);
            frontier.emplace_back(px, py);
        }
    }
    return pixels;
}

// label map with the blob as label 1 over a label-0 background
inline selfception::LabelMap blob_label_map(int w, int h,
                                            const std::vector<std::pair<int, int>>& blob) {
    selfception::LabelMap lm(w, h);
    for (const auto& [x, y] : blob) lm.at(x, y) = 1;
    lm.region_count = 2;
    return lm;
}

}  // namespace testutil
