#include "selfception/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "selfception/errors.hpp"

namespace selfception {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool has_extension(const std::string& path, const char* ext) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return false;
    std::string e = path.substr(dot + 1);
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e == ext;
}

uint8_t quantize(double v) {
    const double r = std::round(v);
    return static_cast<uint8_t>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
}

std::vector<uint8_t> to_bytes(const Image& img) {
    std::vector<uint8_t> bytes(img.data.size());
    for (size_t i = 0; i < img.data.size(); ++i) {
        bytes[i] = quantize(img.data[i]);
    }
    return bytes;
}

// ---- PPM (binary P6) ----

int ppm_read_token(std::FILE* f) {
    // skips whitespace and '#' comments, then parses one decimal value
    int c = std::fgetc(f);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        } else if (!std::isspace(c)) {
            break;
        }
        c = std::fgetc(f);
    }
    if (c == EOF || !std::isdigit(c)) {
        throw FormatError("PPM: malformed header");
    }
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1'000'000'000L) throw FormatError("PPM: header value out of range");
        c = std::fgetc(f);
    }
    return static_cast<int>(v);
}

Image load_ppm(std::FILE* f, const std::string& path) {
    char magic[2];
    if (std::fread(magic, 1, 2, f) != 2 || magic[0] != 'P' || magic[1] != '6') {
        throw FormatError("not a binary PPM (P6) file: " + path);
    }
    const int w = ppm_read_token(f);
    const int h = ppm_read_token(f);
    const int maxval = ppm_read_token(f);
    if (w < 1 || h < 1 || maxval != 255) {
        throw FormatError("PPM: unsupported dimensions or maxval in " + path);
    }
    const size_t n = static_cast<size_t>(w) * h * 3;
    std::vector<uint8_t> bytes(n);
    if (std::fread(bytes.data(), 1, n, f) != n) {
        throw FormatError("PPM: truncated pixel data in " + path);
    }
    Image img(w, h);
    for (size_t i = 0; i < n; ++i) img.data[i] = bytes[i];
    return img;
}

void save_ppm(const Image& img, std::FILE* f, const std::string& path) {
    const std::string header =
        "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    const std::vector<uint8_t> bytes = to_bytes(img);
    if (std::fwrite(header.data(), 1, header.size(), f) != header.size() ||
        std::fwrite(bytes.data(), 1, bytes.size(), f) != bytes.size()) {
        throw IoError("failed to write PPM: " + path);
    }
}

// ---- PNG via libpng ----

Image load_png(std::FILE* f, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failed");
    }
    std::vector<png_bytep> rows;
    std::vector<uint8_t> buf;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("undecodable PNG: " + path);
    }
    png_init_io(png, f);
    png_read_info(png, info);

    // normalize everything to 8-bit RGB
    png_set_strip_16(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const size_t stride = png_get_rowbytes(png, info);
    if (stride != static_cast<size_t>(w) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("PNG: unexpected row layout in " + path);
    }
    buf.resize(static_cast<size_t>(h) * stride);
    rows.resize(h);
    for (int y = 0; y < h; ++y) rows[y] = buf.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(w, h);
    for (size_t i = 0; i < buf.size(); ++i) img.data[i] = buf[i];
    return img;
}

void save_png(const Image& img, std::FILE* f, const std::string& path) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG: " + path);
    }
    png_init_io(png, f);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::vector<uint8_t> bytes = to_bytes(img);
    const size_t stride = static_cast<size_t>(img.width) * 3;
    for (int y = 0; y < img.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(bytes.data() + y * stride));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

Image load_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError("cannot open file: " + path);
    unsigned char sig[8];
    const size_t got = std::fread(sig, 1, 8, f.get());
    std::rewind(f.get());
    if (got >= 2 && sig[0] == 'P' && sig[1] == '6') {
        return load_ppm(f.get(), path);
    }
    if (got == 8 && png_sig_cmp(sig, 0, 8) == 0) {
        return load_png(f.get(), path);
    }
    throw FormatError("unrecognized image format: " + path);
}

void save_image(const Image& img, const std::string& path) {
    if (img.width < 1 || img.height < 1) {
        throw IoError("save_image: empty image");
    }
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot open file for writing: " + path);
    if (has_extension(path, "ppm") || has_extension(path, "pnm")) {
        save_ppm(img, f.get(), path);
    } else {
        save_png(img, f.get(), path);
    }
    if (std::fflush(f.get()) != 0) throw IoError("failed to flush: " + path);
}

}  // namespace selfception
