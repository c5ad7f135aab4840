#include "selfception/render.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "selfception/errors.hpp"
#include "selfception/image_io.hpp"

namespace selfception {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double clamp255(double v) { return v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v); }

}  // namespace

Image base_layer(const Image& img, const LabelMap& labels,
                 const std::vector<RegionStats>& stats, Background mode) {
    if (labels.width != img.width || labels.height != img.height) {
        throw DimensionError("base_layer: dimensions differ");
    }
    switch (mode) {
        case Background::Original:
            return img;
        case Background::Black:
            return Image(img.width, img.height, 0.0);
        case Background::SegmentMean:
            break;
    }
    Image out(img.width, img.height);
    const size_t n = img.pixel_count();
    for (size_t i = 0; i < n; ++i) {
        const Color3& m = stats[labels.labels[i]].mean_color;
        double* q = out.data.data() + 3 * i;
        q[0] = std::round(clamp255(m.r));
        q[1] = std::round(clamp255(m.g));
        q[2] = std::round(clamp255(m.b));
    }
    return out;
}

Image shifted_tile(const Image& resized, const Color3& rang, const Color3& total_mean, bool clip) {
    Image out = resized;
    const double dr = rang.r - total_mean.r;
    const double dg = rang.g - total_mean.g;
    const double db = rang.b - total_mean.b;
    const size_t n = out.pixel_count();
    for (size_t i = 0; i < n; ++i) {
        double* p = out.data.data() + 3 * i;
        p[0] += dr;
        p[1] += dg;
        p[2] += db;
        if (clip) {
            p[0] = clamp255(p[0]);
            p[1] = clamp255(p[1]);
            p[2] = clamp255(p[2]);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> ellipse_interior_pixels(const Ellipse& e, const Rect& bounds) {
    const Rect box = ellipse_bbox(e, bounds);
    std::vector<std::pair<int, int>> pixels;
    for (int y = box.y0; y <= box.y1; ++y) {
        for (int x = box.x0; x <= box.x1; ++x) {
            if (point_in_ellipse(e, x, y)) pixels.emplace_back(x, y);
        }
    }
    if (pixels.empty()) {
        // degenerate clamp: every region paints at least one pixel
        const int cx = std::clamp(static_cast<int>(std::lround(e.cx)), bounds.x0, bounds.x1);
        const int cy = std::clamp(static_cast<int>(std::lround(e.cy)), bounds.y0, bounds.y1);
        pixels.emplace_back(cx, cy);
    }
    return pixels;
}

void render_region(Image& canvas, const Image& original, const Ellipse& e, const Color3& rang,
                   const Color3& total_mean, const RenderConfig& cfg) {
    if (canvas.width != original.width || canvas.height != original.height) {
        throw DimensionError("render_region: canvas and original dimensions differ");
    }
    const Rect bounds{0, 0, original.width - 1, original.height - 1};
    const Rect box = ellipse_bbox(e, bounds);
    const int bw = box.width();
    const int bh = box.height();

    Image tile;
    if (cfg.rotated_tiles) {
        // resize into the ellipse-aligned frame, then rotate into the bbox
        const int rw = std::max(1, static_cast<int>(std::lround(2.0 * e.a)));
        const int rh = std::max(1, static_cast<int>(std::lround(2.0 * e.b)));
        tile = rotate_image(resize_bilinear(original, rw, rh), e.theta, bw, bh, rang);
    } else {
        tile = resize_bilinear(original, bw, bh);
    }
    tile = shifted_tile(tile, rang, total_mean, cfg.clip_output);

    const auto pixels = ellipse_interior_pixels(e, bounds);
    for (const auto& [x, y] : pixels) {
        const int tx = std::clamp(x - box.x0, 0, bw - 1);
        const int ty = std::clamp(y - box.y0, 0, bh - 1);
        canvas.set(x, y, tile.at(tx, ty));
    }
}

std::pair<Image, SelfceptionReport> self_ception(const Image& img, const SlicParams& slic,
                                                 const RenderConfig& cfg) {
    SelfceptionReport report;
    report.requested_k = slic.target_regions;
    report.slic = slic;
    report.config = cfg;

    const auto t_total = Clock::now();
    auto t0 = Clock::now();
    const LabImage lab = rgb_to_lab(img);
    const LabelMap labels = run_slic(lab, slic);
    report.timings.segmentation_ms = ms_since(t0);

    t0 = Clock::now();
    const std::vector<RegionStats> stats = region_stats(labels, img);
    std::vector<Ellipse> ellipses(stats.size());
    for (size_t i = 0; i < stats.size(); ++i) ellipses[i] = fit_ellipse(stats[i]);
    report.timings.stats_ms = ms_since(t0);

    t0 = Clock::now();
    const Color3 total_mean = mean_color(img);
    const Rect bounds{0, 0, img.width - 1, img.height - 1};
    Image canvas = base_layer(img, labels, stats, cfg.background);

    if (cfg.emit_frames) {
        std::filesystem::create_directories(*cfg.emit_frames);
    }
    int frame = 0;
    for (size_t i = 0; i < ellipses.size(); ++i) {
        const auto pixels = ellipse_interior_pixels(ellipses[i], bounds);
        const Color3 rang = masked_mean_color(img, pixels);
        render_region(canvas, img, ellipses[i], rang, total_mean, cfg);
        if (cfg.emit_frames && (i + 1) % static_cast<size_t>(std::max(1, cfg.frame_stride)) == 0) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%06d.png", ++frame);
            save_image(canvas, (std::filesystem::path(*cfg.emit_frames) / name).string());
        }
    }
    report.timings.render_ms = ms_since(t0);

    report.achieved_regions = labels.region_count;
    report.mse = mse(canvas, img);
    report.timings.total_ms = ms_since(t_total);
    return {std::move(canvas), report};
}

}  // namespace selfception
