#include "selfception/slic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <memory>
#include <thread>
#include <vector>

#include "selfception/errors.hpp"

namespace selfception {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

inline double lab_diff2(const double* a, const double* b) {
    const double dl = a[0] - b[0];
    const double da = a[1] - b[1];
    const double db = a[2] - b[2];
    return dl * dl + da * da + db * db;
}

// squared Lab difference of horizontal plus vertical neighbors (edge-clamped)
double gradient_at(const LabImage& lab, int x, int y) {
    const int xm = clampi(x - 1, 0, lab.width - 1);
    const int xp = clampi(x + 1, 0, lab.width - 1);
    const int ym = clampi(y - 1, 0, lab.height - 1);
    const int yp = clampi(y + 1, 0, lab.height - 1);
    return lab_diff2(lab.px(xp, y), lab.px(xm, y)) + lab_diff2(lab.px(x, yp), lab.px(x, ym));
}

void parallel_rows(int height, int workers, const std::function<void(int, int)>& fn) {
    if (workers <= 1 || height < 2) {
        fn(0, height);
        return;
    }
    const int n = std::min(workers, height);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) {
        const int y0 = static_cast<int>(static_cast<long long>(height) * t / n);
        const int y1 = static_cast<int>(static_cast<long long>(height) * (t + 1) / n);
        pool.emplace_back(fn, y0, y1);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<ClusterCenter> init_seeds(const LabImage& lab, int k) {
    const long long pixels = static_cast<long long>(lab.width) * lab.height;
    if (k < 1 || k > pixels) {
        throw ParamError("init_seeds: k must be in [1, pixel count]");
    }
    const double spacing = std::sqrt(static_cast<double>(pixels) / k);
    const int nx = std::max(1, static_cast<int>(std::lround(lab.width / spacing)));
    const int ny = std::max(1, static_cast<int>(std::lround(lab.height / spacing)));

    std::vector<ClusterCenter> centers;
    centers.reserve(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int x = clampi(static_cast<int>(std::lround((i + 0.5) * lab.width / nx - 0.5)), 0,
                           lab.width - 1);
            int y = clampi(static_cast<int>(std::lround((j + 0.5) * lab.height / ny - 0.5)), 0,
                           lab.height - 1);
            // move to the lowest-gradient pixel in the 3x3 neighborhood;
            // the grid position itself wins ties
            int bx = x, by = y;
            double bg = gradient_at(lab, x, y);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int cx = clampi(x + dx, 0, lab.width - 1);
                    const int cy = clampi(y + dy, 0, lab.height - 1);
                    const double g = gradient_at(lab, cx, cy);
                    if (g < bg) {
                        bg = g;
                        bx = cx;
                        by = cy;
                    }
                }
            }
            const double* p = lab.px(bx, by);
            centers.push_back({p[0], p[1], p[2], static_cast<double>(bx), static_cast<double>(by)});
        }
    }
    return centers;
}

LabelMap run_slic(const LabImage& lab, const SlicParams& params) {
    const int w = lab.width;
    const int h = lab.height;
    const long long pixels = static_cast<long long>(w) * h;
    if (params.target_regions < 1 || params.target_regions > pixels) {
        throw ParamError("run_slic: target_regions must be in [1, pixel count]");
    }
    if (params.compactness <= 0.0) throw ParamError("run_slic: compactness must be positive");
    if (params.iterations < 1) throw ParamError("run_slic: iterations must be positive");
    if (params.min_region_fraction <= 0.0 || params.min_region_fraction >= 1.0) {
        throw ParamError("run_slic: min_region_fraction must be in (0,1)");
    }
    const int workers = params.workers > 0
                            ? params.workers
                            : std::max(1u, std::thread::hardware_concurrency());

    std::vector<ClusterCenter> centers = init_seeds(lab, params.target_regions);
    const std::vector<ClusterCenter> seeds = centers;  // for the fallback pass
    const int ncenters = static_cast<int>(centers.size());
    const double spacing = std::sqrt(static_cast<double>(pixels) / params.target_regions);
    const double inv_s2 = 1.0 / (spacing * spacing);
    const double m2 = params.compactness * params.compactness;

    std::vector<int32_t> assign(pixels, -1);
    const int cells_x = std::max(1, static_cast<int>(std::ceil(w / spacing)));
    const int cells_y = std::max(1, static_cast<int>(std::ceil(h / spacing)));
    std::vector<std::vector<int>> buckets(static_cast<size_t>(cells_x) * cells_y);

    for (int iter = 0; iter < params.iterations; ++iter) {
        // bucket centers by cell so each pixel only inspects nearby centers
        for (auto& b : buckets) b.clear();
        for (int c = 0; c < ncenters; ++c) {
            const int cx = clampi(static_cast<int>(centers[c].x / spacing), 0, cells_x - 1);
            const int cy = clampi(static_cast<int>(centers[c].y / spacing), 0, cells_y - 1);
            buckets[static_cast<size_t>(cy) * cells_x + cx].push_back(c);
        }

        // assignment: each center claims pixels within its 2S x 2S window;
        // per-pixel result is independent of worker count
        parallel_rows(h, workers, [&](int y0, int y1) {
            for (int y = y0; y < y1; ++y) {
                const int gy = clampi(static_cast<int>(y / spacing), 0, cells_y - 1);
                for (int x = 0; x < w; ++x) {
                    const int gx = clampi(static_cast<int>(x / spacing), 0, cells_x - 1);
                    const double* p = lab.px(x, y);
                    double best = std::numeric_limits<double>::infinity();
                    int best_c = -1;
                    for (int cy = std::max(0, gy - 1); cy <= std::min(cells_y - 1, gy + 1); ++cy) {
                        for (int cx = std::max(0, gx - 1); cx <= std::min(cells_x - 1, gx + 1);
                             ++cx) {
                            for (int c : buckets[static_cast<size_t>(cy) * cells_x + cx]) {
                                const ClusterCenter& cc = centers[c];
                                if (std::abs(cc.x - x) > spacing || std::abs(cc.y - y) > spacing) {
                                    continue;
                                }
                                const double dl = p[0] - cc.L;
                                const double da = p[1] - cc.a;
                                const double db = p[2] - cc.b;
                                const double dx = x - cc.x;
                                const double dy = y - cc.y;
                                const double d = dl * dl + da * da + db * db +
                                                 (dx * dx + dy * dy) * inv_s2 * m2;
                                if (d < best || (d == best && c < best_c)) {
                                    best = d;
                                    best_c = c;
                                }
                            }
                        }
                    }
                    assign[static_cast<size_t>(y) * w + x] = best_c;
                }
            }
        });

        // centroid update, serial raster order for determinism
        std::vector<double> sums(static_cast<size_t>(ncenters) * 5, 0.0);
        std::vector<long long> counts(ncenters, 0);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const int c = assign[static_cast<size_t>(y) * w + x];
                if (c < 0) continue;
                const double* p = lab.px(x, y);
                double* s = sums.data() + static_cast<size_t>(c) * 5;
                s[0] += p[0];
                s[1] += p[1];
                s[2] += p[2];
                s[3] += x;
                s[4] += y;
                ++counts[c];
            }
        }
        for (int c = 0; c < ncenters; ++c) {
            if (counts[c] == 0) continue;
            const double* s = sums.data() + static_cast<size_t>(c) * 5;
            const double n = static_cast<double>(counts[c]);
            centers[c] = {s[0] / n, s[1] / n, s[2] / n, s[3] / n, s[4] / n};
        }
    }

    // coverage fallback: any pixel left outside every window goes to the
    // spatially nearest original seed
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int32_t& a = assign[static_cast<size_t>(y) * w + x];
            if (a >= 0) continue;
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (int c = 0; c < ncenters; ++c) {
                const double dx = seeds[c].x - x;
                const double dy = seeds[c].y - y;
                const double d = dx * dx + dy * dy;
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            a = best_c;
        }
    }

    LabelMap raw(w, h);
    raw.labels = std::move(assign);
    raw.region_count = ncenters;

    const int min_size = std::max(
        1, static_cast<int>(params.min_region_fraction * static_cast<double>(pixels) /
                            params.target_regions));
    return enforce_connectivity(raw, min_size);
}

LabelMap enforce_connectivity(const LabelMap& input, int min_size) {
    const int w = input.width;
    const int h = input.height;
    const size_t n = static_cast<size_t>(w) * h;

    // 4-connected component extraction, components numbered in raster order
    // of first occurrence
    std::vector<int32_t> comp(n, -1);
    std::vector<long long> comp_size;
    std::vector<std::vector<int32_t>> comp_pixels;
    std::vector<int32_t> stack;
    for (size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        const int32_t id = static_cast<int32_t>(comp_size.size());
        const int32_t lbl = input.labels[start];
        comp_size.push_back(0);
        comp_pixels.emplace_back();
        stack.push_back(static_cast<int32_t>(start));
        comp[start] = id;
        while (!stack.empty()) {
            const int32_t i = stack.back();
            stack.pop_back();
            ++comp_size[id];
            comp_pixels[id].push_back(i);
            const int x = i % w;
            const int y = i / w;
            const int32_t nb[4] = {x > 0 ? i - 1 : -1, x < w - 1 ? i + 1 : -1,
                                   y > 0 ? i - w : -1, y < h - 1 ? i + w : -1};
            for (int32_t j : nb) {
                if (j >= 0 && comp[j] < 0 && input.labels[j] == lbl) {
                    comp[j] = id;
                    stack.push_back(j);
                }
            }
        }
    }
    const int ncomp = static_cast<int>(comp_size.size());

    // union-find over components; small ones merge into their largest
    // 4-adjacent neighbor (ties to the lower component id)
    std::vector<int32_t> parent(ncomp);
    for (int i = 0; i < ncomp; ++i) parent[i] = i;
    auto find = [&](int32_t c) {
        while (parent[c] != c) {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        return c;
    };
    std::vector<long long> root_size(comp_size);

    for (int c = 0; c < ncomp; ++c) {
        const int32_t rc = find(c);
        if (root_size[rc] >= min_size) continue;
        int32_t best = -1;
        long long best_size = -1;
        for (int32_t i : comp_pixels[c]) {
            const int x = i % w;
            const int y = i / w;
            const int32_t nb[4] = {x > 0 ? i - 1 : -1, x < w - 1 ? i + 1 : -1,
                                   y > 0 ? i - w : -1, y < h - 1 ? i + w : -1};
            for (int32_t j : nb) {
                if (j < 0) continue;
                const int32_t r = find(comp[j]);
                if (r == rc) continue;
                if (root_size[r] > best_size || (root_size[r] == best_size && r < best)) {
                    best = r;
                    best_size = root_size[r];
                }
            }
        }
        if (best >= 0) {
            parent[rc] = best;
            root_size[best] += root_size[rc];
        }
    }

    // dense relabel in raster order of first occurrence
    LabelMap out(w, h);
    std::vector<int32_t> remap(ncomp, -1);
    int32_t next = 0;
    for (size_t i = 0; i < n; ++i) {
        const int32_t r = find(comp[i]);
        if (remap[r] < 0) remap[r] = next++;
        out.labels[i] = remap[r];
    }
    out.region_count = next;
    return out;
}

Image label_means_image(const LabelMap& labels, const Image& img) {
    if (labels.width != img.width || labels.height != img.height) {
        throw DimensionError("label_means_image: dimensions differ");
    }
    std::vector<double> sums(static_cast<size_t>(labels.region_count) * 3, 0.0);
    std::vector<long long> counts(labels.region_count, 0);
    const size_t n = img.pixel_count();
    for (size_t i = 0; i < n; ++i) {
        const int32_t l = labels.labels[i];
        const double* p = img.data.data() + 3 * i;
        double* s = sums.data() + static_cast<size_t>(l) * 3;
        s[0] += p[0];
        s[1] += p[1];
        s[2] += p[2];
        ++counts[l];
    }
    Image out(img.width, img.height);
    for (size_t i = 0; i < n; ++i) {
        const int32_t l = labels.labels[i];
        const double* s = sums.data() + static_cast<size_t>(l) * 3;
        double* q = out.data.data() + 3 * i;
        const double c = static_cast<double>(counts[l]);
        q[0] = s[0] / c;
        q[1] = s[1] / c;
        q[2] = s[2] / c;
    }
    return out;
}

void save_label_raster(const LabelMap& labels, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open file for writing: " + path);
    auto write_i32 = [&](int32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                              static_cast<unsigned char>((v >> 8) & 0xff),
                              static_cast<unsigned char>((v >> 16) & 0xff),
                              static_cast<unsigned char>((v >> 24) & 0xff)};
        if (std::fwrite(b, 1, 4, f) != 4) {
            std::fclose(f);
            throw IoError("failed to write label raster: " + path);
        }
    };
    write_i32(labels.width);
    write_i32(labels.height);
    for (int32_t l : labels.labels) write_i32(l);
    std::fclose(f);
}

LabelMap load_label_raster(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open file: " + path);
    auto read_i32 = [&](int32_t& v) {
        unsigned char b[4];
        if (std::fread(b, 1, 4, f) != 4) {
            std::fclose(f);
            throw FormatError("truncated label raster: " + path);
        }
        v = static_cast<int32_t>(b[0] | (b[1] << 8) | (b[2] << 16) |
                                 (static_cast<uint32_t>(b[3]) << 24));
    };
    int32_t w = 0, h = 0;
    read_i32(w);
    read_i32(h);
    if (w < 1 || h < 1) {
        std::fclose(f);
        throw FormatError("bad label raster header: " + path);
    }
    LabelMap out(w, h);
    int32_t maxl = -1;
    for (auto& l : out.labels) {
        read_i32(l);
        maxl = std::max(maxl, l);
    }
    std::fclose(f);
    out.region_count = maxl + 1;
    return out;
}

}  // namespace selfception
