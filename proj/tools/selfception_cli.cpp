#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "selfception/errors.hpp"
#include "selfception/image_io.hpp"
#include "selfception/render.hpp"

namespace sc = selfception;

namespace {

struct RunSpec {
    std::string input;
    std::string output;
    std::vector<int> k_list{400};
    double compactness = 10.0;
    int iterations = 10;
    int workers = 1;
    bool rotated = false;
    bool no_clip = false;
    std::string background = "segment-mean";
    std::string frames_dir;
    int frame_stride = 1;
    std::string report_csv;
    bool dump_labels = false;
    bool dump_ellipses = false;
    std::string preset;
};

// k values tuned so the achieved region counts land near the figure captions
const std::map<std::string, std::vector<int>> kPaperPresets = {
    {"chelsea", {555, 1000, 1430}},
    {"coffee", {510, 1120, 1500}},
};

sc::Background parse_background(const std::string& s) {
    if (s == "segment-mean") return sc::Background::SegmentMean;
    if (s == "original") return sc::Background::Original;
    if (s == "black") return sc::Background::Black;
    throw sc::ParamError("unknown background mode: " + s);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    std::filesystem::path out = p.parent_path() / p.stem();
    return out.string() + suffix + p.extension().string();
}

void dump_debug(const RunSpec& spec, const sc::Image& img, const std::string& out_path,
                const sc::SlicParams& params) {
    if (!spec.dump_labels && !spec.dump_ellipses) return;
    const sc::LabImage lab = sc::rgb_to_lab(img);
    const sc::LabelMap labels = sc::run_slic(lab, params);
    if (spec.dump_labels) {
        sc::save_image(sc::label_means_image(labels, img), with_suffix(out_path, "_labels"));
        const std::filesystem::path p(out_path);
        sc::save_label_raster(labels, (p.parent_path() / p.stem()).string() + "_labels.bin");
    }
    if (spec.dump_ellipses) {
        const auto stats = sc::region_stats(labels, img);
        std::vector<sc::Ellipse> ellipses(stats.size());
        for (size_t i = 0; i < stats.size(); ++i) ellipses[i] = sc::fit_ellipse(stats[i]);
        sc::save_image(sc::draw_ellipses(img, ellipses), with_suffix(out_path, "_ellipses"));
    }
}

int run(const RunSpec& spec) {
    sc::RenderConfig cfg;
    cfg.rotated_tiles = spec.rotated;
    cfg.clip_output = !spec.no_clip;
    cfg.background = parse_background(spec.background);
    if (!spec.frames_dir.empty()) cfg.emit_frames = spec.frames_dir;
    cfg.frame_stride = spec.frame_stride;

    std::vector<int> ks = spec.k_list;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (int k : ks) {
        if (k < 1) throw sc::ParamError("k must be at least 1, got " + std::to_string(k));
    }
    const bool sweep = ks.size() > 1;
    if (sweep && spec.report_csv.empty()) {
        throw sc::ParamError("a k sweep needs --report CSV");
    }

    const sc::Image img = sc::load_image(spec.input);

    std::FILE* csv = nullptr;
    if (!spec.report_csv.empty()) {
        csv = std::fopen(spec.report_csv.c_str(), "wb");
        if (!csv) throw sc::IoError("cannot open report file: " + spec.report_csv);
        std::fprintf(csv, "requested_k,achieved_regions,mse,elapsed_ms\n");
        std::fflush(csv);
    }

    for (int k : ks) {
        sc::SlicParams params;
        params.target_regions = k;
        params.compactness = spec.compactness;
        params.iterations = spec.iterations;
        params.workers = spec.workers;

        const auto t0 = std::chrono::steady_clock::now();
        auto [canvas, report] = sc::self_ception(img, params, cfg);
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();

        if (!spec.output.empty()) {
            const std::string out_path =
                sweep ? with_suffix(spec.output, "_k" + std::to_string(k)) : spec.output;
            sc::save_image(canvas, out_path);
            dump_debug(spec, img, out_path, params);
        }
        std::printf("regions=%d mse=%.2f\n", report.achieved_regions, report.mse);
        if (csv) {
            std::fprintf(csv, "%d,%d,%.6f,%.3f\n", k, report.achieved_regions, report.mse,
                         elapsed);
            std::fflush(csv);
        }
    }
    if (csv) std::fclose(csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunSpec spec;
    CLI::App app{
        "selfception: rebuild an image as a mosaic of scaled copies of itself,\n"
        "one per superpixel-fitted ellipse"};
    app.add_option("--input", spec.input, "input image (PNG or binary PPM)")->required();
    app.add_option("--output", spec.output, "output image path");
    app.add_option("--k", spec.k_list,
                   "requested region count; a comma list runs a sweep (needs --report)")
        ->delimiter(',');
    app.add_option("--compactness", spec.compactness, "SLIC compactness m")->capture_default_str();
    app.add_option("--iterations", spec.iterations, "SLIC iterations")->capture_default_str();
    app.add_option("--workers", spec.workers, "worker threads for SLIC assignment (0 = auto)")
        ->capture_default_str();
    app.add_flag("--rotated", spec.rotated, "rotate each tile to its ellipse orientation");
    app.add_flag("--no-clip", spec.no_clip, "skip per-channel clamping after the color shift");
    app.add_option("--background", spec.background, "segment-mean, original, or black")
        ->capture_default_str();
    app.add_option("--frames", spec.frames_dir, "directory for per-region frame snapshots");
    app.add_option("--frame-stride", spec.frame_stride, "write a frame every N regions")
        ->capture_default_str();
    app.add_option("--report", spec.report_csv, "CSV report path (one row per k)");
    app.add_flag("--dump-labels", spec.dump_labels,
                 "write per-region mean-color PNG and raw int32 label raster");
    app.add_flag("--dump-ellipses", spec.dump_ellipses, "write fitted-ellipse overlay PNG");
    app.add_option("--paper-preset", spec.preset, "chelsea or coffee: bundled sweep k lists")
        ->check(CLI::IsMember({"chelsea", "coffee"}));

    try {
        app.parse(argc, argv);
        if (!spec.preset.empty()) spec.k_list = kPaperPresets.at(spec.preset);
        return run(spec);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const sc::ParamError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const sc::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 1;
    } catch (const sc::FormatError& e) {
        std::fprintf(stderr, "format error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
