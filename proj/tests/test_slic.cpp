#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "selfception/errors.hpp"
#include "selfception/image_io.hpp"
#include "selfception/slic.hpp"
#include "test_util.hpp"

using namespace selfception;
using namespace testutil;

namespace {

Image gradient_photo(int w, int h) {
    return make_image(w, h, [&](int x, int y) {
        return Color3{255.0 * x / w, 255.0 * y / h, 255.0 * (x + y) / (w + h)};
    });
}

}  // namespace

TEST_CASE("init_seeds: k = 1 places one center in the middle") {
    const LabImage lab = rgb_to_lab(constant_image(100, 100, {80, 80, 80}));
    const auto seeds = init_seeds(lab, 1);
    REQUIRE(seeds.size() == 1);
    CHECK(seeds[0].x == doctest::Approx(50.0).epsilon(0.02));
    CHECK(seeds[0].y == doctest::Approx(50.0).epsilon(0.02));
}

TEST_CASE("init_seeds: 100x100 with k = 4, grid spacing 50") {
    // constant image: every gradient is 0, so the grid position wins its tie
    const LabImage lab = rgb_to_lab(constant_image(100, 100, {80, 80, 80}));
    const auto seeds = init_seeds(lab, 4);
    REQUIRE(seeds.size() == 4);
    std::set<std::pair<int, int>> got;
    for (const auto& s : seeds) got.insert({int(s.x), int(s.y)});
    const std::set<std::pair<int, int>> want{{25, 25}, {75, 25}, {25, 75}, {75, 75}};
    CHECK(got == want);
}

TEST_CASE("init_seeds: seed count stays within the grid-rounding band") {
    const LabImage lab = rgb_to_lab(gradient_photo(120, 90));
    for (int k : {10, 50, 200, 1000}) {
        const auto seeds = init_seeds(lab, k);
        const double slack = 2.0 * std::sqrt(double(k));
        CHECK(double(seeds.size()) >= k - slack);
        CHECK(double(seeds.size()) <= k + slack);
    }
}

TEST_CASE("init_seeds: k out of range is ParamError") {
    const LabImage lab = rgb_to_lab(constant_image(4, 4, {0, 0, 0}));
    CHECK_THROWS_AS(init_seeds(lab, 0), ParamError);
    CHECK_THROWS_AS(init_seeds(lab, 17), ParamError);
}

TEST_CASE("run_slic: k = 1 labels every pixel 0") {
    const LabImage lab = rgb_to_lab(gradient_photo(30, 20));
    SlicParams params;
    params.target_regions = 1;
    const LabelMap lm = run_slic(lab, params);
    CHECK(lm.region_count == 1);
    CHECK(std::all_of(lm.labels.begin(), lm.labels.end(), [](int32_t l) { return l == 0; }));
}

TEST_CASE("run_slic: constant image with k = 4 gives four spatial quadrants") {
    // color distance is zero everywhere, so assignment reduces to the
    // nearest seed spatially
    const LabImage lab = rgb_to_lab(constant_image(100, 100, {90, 120, 30}));
    SlicParams params;
    params.target_regions = 4;
    const LabelMap lm = run_slic(lab, params);
    REQUIRE(lm.region_count == 4);

    // each region is one solid rectangle of roughly a quarter of the image
    for (int l = 0; l < 4; ++l) {
        int x0 = 100, x1 = -1, y0 = 100, y1 = -1;
        long long area = 0;
        for (int y = 0; y < 100; ++y) {
            for (int x = 0; x < 100; ++x) {
                if (lm.at(x, y) == l) {
                    ++area;
                    x0 = std::min(x0, x);
                    x1 = std::max(x1, x);
                    y0 = std::min(y0, y);
                    y1 = std::max(y1, y);
                }
            }
        }
        CHECK(area == static_cast<long long>(x1 - x0 + 1) * (y1 - y0 + 1));
        CHECK(area >= 2300);
        CHECK(area <= 2700);
    }
}

TEST_CASE("run_slic: invalid params") {
    const LabImage lab = rgb_to_lab(constant_image(10, 10, {0, 0, 0}));
    SlicParams p;
    p.target_regions = 0;
    CHECK_THROWS_AS(run_slic(lab, p), ParamError);
    p.target_regions = 4;
    p.compactness = 0.0;
    CHECK_THROWS_AS(run_slic(lab, p), ParamError);
    p.compactness = 10.0;
    p.iterations = 0;
    CHECK_THROWS_AS(run_slic(lab, p), ParamError);
}

TEST_CASE("run_slic: coverage, connectivity and determinism across workers") {
    const LabImage lab = rgb_to_lab(gradient_photo(64, 48));
    SlicParams params;
    params.target_regions = 20;
    params.workers = 1;
    const LabelMap serial = run_slic(lab, params);

    const auto oracle = flood_fill_oracle(serial);
    CHECK(oracle.labels_dense);
    CHECK(oracle.labels_connected);
    CHECK(oracle.component_count == serial.region_count);

    params.workers = 4;
    CHECK(run_slic(lab, params) == serial);
    params.workers = 0;  // auto
    CHECK(run_slic(lab, params) == serial);
}

TEST_CASE("run_slic: achieved count tracks k on a photo") {
    const Image img = load_image(data_path("chelsea.png"));
    const LabImage lab = rgb_to_lab(img);
    SlicParams params;
    params.target_regions = 150;
    const LabelMap lm = run_slic(lab, params);
    CHECK(lm.region_count >= 112);  // within 25% of k
    CHECK(lm.region_count <= 188);
    const auto oracle = flood_fill_oracle(lm);
    CHECK(oracle.labels_connected);
    CHECK(oracle.labels_dense);
}

TEST_CASE("enforce_connectivity: already connected map keeps its partition") {
    LabelMap lm(6, 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 6; ++x) lm.at(x, y) = x < 3 ? 0 : 1;
    }
    lm.region_count = 2;
    const LabelMap out = enforce_connectivity(lm, 2);
    CHECK(out.region_count == 2);
    CHECK(out.labels == lm.labels);
}

TEST_CASE("enforce_connectivity: stray pixel is absorbed") {
    LabelMap lm(5, 5);
    lm.region_count = 2;
    lm.at(2, 2) = 1;  // single pixel of label 1 in a sea of 0
    const LabelMap out = enforce_connectivity(lm, 2);
    CHECK(out.region_count == 1);
    CHECK(std::all_of(out.labels.begin(), out.labels.end(), [](int32_t l) { return l == 0; }));
}

TEST_CASE("enforce_connectivity: checkerboard components all merge") {
    LabelMap lm(8, 8);
    lm.region_count = 2;
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) lm.at(x, y) = (x + y) % 2;
    }
    const LabelMap out = enforce_connectivity(lm, 2);
    const auto oracle = flood_fill_oracle(out);
    CHECK(oracle.labels_dense);
    CHECK(oracle.labels_connected);
    CHECK(oracle.component_count == out.region_count);
    // every original 1-pixel component was absorbed somewhere
    std::vector<long long> sizes(out.region_count, 0);
    for (int32_t l : out.labels) ++sizes[l];
    for (long long s : sizes) CHECK(s >= 2);
}

TEST_CASE("enforce_connectivity: disconnected label is split before relabeling") {
    LabelMap lm(7, 1);
    lm.region_count = 2;
    // label 0 appears in two separate runs: 0 0 1 1 1 0 0
    for (int x = 0; x < 7; ++x) lm.at(x, 0) = (x >= 2 && x <= 4) ? 1 : 0;
    const LabelMap out = enforce_connectivity(lm, 2);
    CHECK(out.region_count == 3);
    CHECK(out.at(0, 0) == 0);
    CHECK(out.at(2, 0) == 1);
    CHECK(out.at(6, 0) == 2);
}

TEST_CASE("label raster dump round trip") {
    const LabImage lab = rgb_to_lab(gradient_photo(32, 24));
    SlicParams params;
    params.target_regions = 8;
    const LabelMap lm = run_slic(lab, params);
    const auto p = std::filesystem::temp_directory_path() / "selfception_labels.bin";
    save_label_raster(lm, p.string());
    CHECK(load_label_raster(p.string()) == lm);
}

TEST_CASE("label_means_image: constant per region") {
    LabelMap lm(4, 2);
    lm.region_count = 2;
    for (int x = 0; x < 4; ++x) lm.at(x, 1) = 1;
    Image img = constant_image(4, 2, {10, 10, 10});
    for (int x = 0; x < 4; ++x) img.set(x, 1, {double(40 + 20 * x), 0, 0});
    const Image means = label_means_image(lm, img);
    CHECK(means.at(0, 0).r == doctest::Approx(10.0));
    CHECK(means.at(3, 1).r == doctest::Approx(70.0));
}
