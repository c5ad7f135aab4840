#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selfception/errors.hpp"
#include "selfception/image_io.hpp"
#include "selfception/render.hpp"

namespace py = pybind11;
namespace sc = selfception;

namespace {

sc::Image image_from_array(const py::array& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3) {
        throw sc::DimensionError("expected an array of shape (height, width, 3)");
    }
    const auto a = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(arr);
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    sc::Image img(w, h);
    std::copy(a.data(), a.data() + img.data.size(), img.data.begin());
    return img;
}

py::array_t<uint8_t> image_to_u8(const sc::Image& img) {
    py::array_t<uint8_t> out({img.height, img.width, 3});
    auto* q = out.mutable_data();
    for (size_t i = 0; i < img.data.size(); ++i) {
        const double v = std::round(img.data[i]);
        q[i] = static_cast<uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
    return out;
}

py::array_t<double> image_to_f64(const sc::Image& img) {
    py::array_t<double> out({img.height, img.width, 3});
    std::copy(img.data.begin(), img.data.end(), out.mutable_data());
    return out;
}

py::array_t<int32_t> labels_to_array(const sc::LabelMap& labels) {
    py::array_t<int32_t> out({labels.height, labels.width});
    std::copy(labels.labels.begin(), labels.labels.end(), out.mutable_data());
    return out;
}

sc::SlicParams make_params(int k, double compactness, int iterations, int workers) {
    sc::SlicParams p;
    p.target_regions = k;
    p.compactness = compactness;
    p.iterations = iterations;
    p.workers = workers;
    return p;
}

sc::Background parse_background(const std::string& s) {
    if (s == "segment-mean") return sc::Background::SegmentMean;
    if (s == "original") return sc::Background::Original;
    if (s == "black") return sc::Background::Black;
    throw sc::ParamError("unknown background mode: " + s);
}

}  // namespace

PYBIND11_MODULE(_selfception, m) {
    m.doc() = "Image self-ception: an image rebuilt from scaled copies of itself";

    py::register_exception<sc::IoError>(m, "IoError");
    py::register_exception<sc::FormatError>(m, "FormatError");
    py::register_exception<sc::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<sc::ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<sc::EmptyMaskError>(m, "EmptyMaskError", PyExc_ValueError);

    m.def(
        "load_image",
        [](const std::string& path) { return image_to_u8(sc::load_image(path)); },
        py::arg("path"), "Decode a PNG or binary PPM file to a (h, w, 3) uint8 array.");

    m.def(
        "save_image",
        [](const py::array& img, const std::string& path) {
            sc::save_image(image_from_array(img), path);
        },
        py::arg("image"), py::arg("path"),
        "Encode a (h, w, 3) array as PNG or PPM, chosen by the extension.");

    m.def(
        "mse",
        [](const py::array& a, const py::array& b) {
            return sc::mse(image_from_array(a), image_from_array(b));
        },
        py::arg("a"), py::arg("b"),
        "Mean squared error over all pixels and channels on the 0..255 scale.");

    m.def(
        "mean_color",
        [](const py::array& img) {
            const sc::Color3 c = sc::mean_color(image_from_array(img));
            return py::make_tuple(c.r, c.g, c.b);
        },
        py::arg("image"));

    m.def(
        "resize_bilinear",
        [](const py::array& img, int width, int height) {
            return image_to_f64(sc::resize_bilinear(image_from_array(img), width, height));
        },
        py::arg("image"), py::arg("width"), py::arg("height"),
        "Center-aligned bilinear resize; returns float64 samples.");

    m.def(
        "rotate_image",
        [](const py::array& img, double angle, int width, int height,
           std::tuple<double, double, double> fill) {
            const auto [r, g, b] = fill;
            return image_to_f64(
                sc::rotate_image(image_from_array(img), angle, width, height, {r, g, b}));
        },
        py::arg("image"), py::arg("angle"), py::arg("width"), py::arg("height"),
        py::arg("fill") = std::make_tuple(0.0, 0.0, 0.0));

    m.def(
        "rgb_to_lab",
        [](const py::array& img) {
            const sc::LabImage lab = sc::rgb_to_lab(image_from_array(img));
            py::array_t<double> out({lab.height, lab.width, 3});
            std::copy(lab.data.begin(), lab.data.end(), out.mutable_data());
            return out;
        },
        py::arg("image"), "sRGB (D65) to CIELAB.");

    m.def(
        "slic",
        [](const py::array& img, int k, double compactness, int iterations, int workers) {
            const sc::Image im = image_from_array(img);
            const sc::LabelMap labels =
                sc::run_slic(sc::rgb_to_lab(im), make_params(k, compactness, iterations, workers));
            return py::make_tuple(labels_to_array(labels), labels.region_count);
        },
        py::arg("image"), py::arg("k"), py::arg("compactness") = 10.0,
        py::arg("iterations") = 10, py::arg("workers") = 1,
        "SLIC superpixels; returns (labels, region_count).");

    m.def(
        "fit_ellipses",
        [](const py::array_t<int32_t>& labels, const py::array& img) {
            const sc::Image im = image_from_array(img);
            const auto a =
                py::array_t<int32_t, py::array::c_style | py::array::forcecast>::ensure(labels);
            if (a.ndim() != 2) throw sc::DimensionError("labels must be 2-D");
            sc::LabelMap lm(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
            int32_t maxl = 0;
            for (py::ssize_t i = 0; i < a.size(); ++i) {
                lm.labels[i] = a.data()[i];
                maxl = std::max(maxl, a.data()[i]);
            }
            lm.region_count = maxl + 1;
            const auto stats = sc::region_stats(lm, im);
            py::array_t<double> out({static_cast<py::ssize_t>(stats.size()), py::ssize_t(5)});
            auto* q = out.mutable_data();
            for (size_t i = 0; i < stats.size(); ++i) {
                const sc::Ellipse e = sc::fit_ellipse(stats[i]);
                q[5 * i + 0] = e.cx;
                q[5 * i + 1] = e.cy;
                q[5 * i + 2] = e.a;
                q[5 * i + 3] = e.b;
                q[5 * i + 4] = e.theta;
            }
            return out;
        },
        py::arg("labels"), py::arg("image"),
        "Equivalent ellipse per region: rows of (cx, cy, a, b, theta).");

    m.def(
        "self_ception",
        [](const py::array& img, int k, double compactness, int iterations, int workers,
           bool rotated, bool clip, const std::string& background) {
            sc::RenderConfig cfg;
            cfg.rotated_tiles = rotated;
            cfg.clip_output = clip;
            cfg.background = parse_background(background);
            auto [canvas, report] = sc::self_ception(
                image_from_array(img), make_params(k, compactness, iterations, workers), cfg);
            py::dict rep;
            rep["requested_k"] = report.requested_k;
            rep["achieved_regions"] = report.achieved_regions;
            rep["mse"] = report.mse;
            rep["segmentation_ms"] = report.timings.segmentation_ms;
            rep["stats_ms"] = report.timings.stats_ms;
            rep["render_ms"] = report.timings.render_ms;
            rep["total_ms"] = report.timings.total_ms;
            return py::make_tuple(image_to_u8(canvas), rep);
        },
        py::arg("image"), py::arg("k"), py::arg("compactness") = 10.0,
        py::arg("iterations") = 10, py::arg("workers") = 1, py::arg("rotated") = false,
        py::arg("clip") = true, py::arg("background") = "segment-mean",
        "Run the full pipeline; returns (output image, report dict).");
}
