#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfception/geometry.hpp"
#include "selfception/image.hpp"
#include "selfception/slic.hpp"

namespace selfception {

enum class Background { SegmentMean, Original, Black };

struct RenderConfig {
    bool rotated_tiles = false;
    bool clip_output = true;
    Background background = Background::SegmentMean;
    std::optional<std::string> emit_frames;  // directory for frame_NNNNNN.png
    int frame_stride = 1;                    // write a frame every N regions
};

struct StageTimings {
    double segmentation_ms = 0.0;
    double stats_ms = 0.0;
    double render_ms = 0.0;
    double total_ms = 0.0;
};

struct SelfceptionReport {
    int requested_k = 0;
    int achieved_regions = 0;
    double mse = 0.0;
    StageTimings timings;
    SlicParams slic;
    RenderConfig config;
};

// Canvas under the ellipses: per-segment mean color, the original, or black.
Image base_layer(const Image& img, const LabelMap& labels,
                 const std::vector<RegionStats>& stats, Background mode);

// Adds (rang - total_mean) to every sample; clamps to [0,255] when clip is set.
Image shifted_tile(const Image& resized, const Color3& rang, const Color3& total_mean, bool clip);

// In-bounds integer coordinates inside the ellipse. Never empty: a fully
// clipped ellipse collapses to the clamped center pixel.
std::vector<std::pair<int, int>> ellipse_interior_pixels(const Ellipse& e, const Rect& bounds);

// Resizes the original into the ellipse's bounding box, applies the color
// shift, and writes the tile into the canvas masked to the ellipse interior.
void render_region(Image& canvas, const Image& original, const Ellipse& e, const Color3& rang,
                   const Color3& total_mean, const RenderConfig& cfg);

// Full pipeline: SLIC -> region stats -> ellipse fit -> composite -> MSE.
std::pair<Image, SelfceptionReport> self_ception(const Image& img, const SlicParams& slic,
                                                 const RenderConfig& cfg);

}  // namespace selfception
