#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selfception/image.hpp"

namespace selfception {

struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<int32_t> labels;  // row-major, values in [0, region_count)
    int region_count = 0;

    LabelMap() = default;
    LabelMap(int w, int h)
        : width(w), height(h), labels(static_cast<size_t>(w) * h, 0), region_count(0) {}

    int32_t at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
    int32_t& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }

    bool operator==(const LabelMap& o) const = default;
};

struct ClusterCenter {
    double L = 0.0, a = 0.0, b = 0.0;
    double x = 0.0, y = 0.0;
};

struct SlicParams {
    int target_regions = 400;         // k
    double compactness = 10.0;        // m
    int iterations = 10;
    double min_region_fraction = 0.25;  // min_size = fraction * (W*H/k)
    int workers = 1;                  // 0 = hardware concurrency
};

// Grid seeding at spacing S = sqrt(W*H/k), each seed moved to the
// lowest-gradient pixel of its 3x3 neighborhood (center wins ties).
std::vector<ClusterCenter> init_seeds(const LabImage& lab, int k);

// Localized k-means over (L,a,b,x,y) followed by enforce_connectivity.
LabelMap run_slic(const LabImage& lab, const SlicParams& params);

// Absorbs 4-connected components smaller than min_size into their largest
// adjacent region, then relabels densely in raster order of first occurrence.
LabelMap enforce_connectivity(const LabelMap& labels, int min_size);

// Debug dumps: per-region mean colors as an image, and a raw raster of
// little-endian int32 (width, height, then labels).
Image label_means_image(const LabelMap& labels, const Image& img);
void save_label_raster(const LabelMap& labels, const std::string& path);
LabelMap load_label_raster(const std::string& path);

}  // namespace selfception
