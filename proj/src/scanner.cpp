#include "pbp/scanner.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>

namespace pbp {

void ScanConfig::validate() const {
    if (patch_rows < 2 || patch_cols < 2) {
        throw std::invalid_argument("patch dimensions must be at least 2");
    }
    if (stride < 1) {
        throw std::invalid_argument("stride must be at least 1");
    }
    if (degree_threshold < 0) {
        throw std::invalid_argument("degree threshold must be nonnegative");
    }
    if (hysteresis) {
        if (hysteresis->low < 0 || hysteresis->low >= hysteresis->high) {
            throw std::invalid_argument("hysteresis bands need 0 <= low < high");
        }
    }
}

EdgeMask::EdgeMask(int w, int h)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {
    if (w < 1 || h < 1) throw std::invalid_argument("EdgeMask: empty image");
}

std::int64_t EdgeMask::edge_pixel_count() const {
    std::int64_t n = 0;
    for (std::uint8_t v : pixels) {
        if (v) ++n;
    }
    return n;
}

CostMatrix patch_at(const QuantizedImage& img, int row, int col,
                    const ScanConfig& cfg) {
    cfg.validate();
    if (row < 0 || col < 0 || row + cfg.patch_rows > img.height ||
        col + cfg.patch_cols > img.width) {
        throw std::out_of_range("patch_at: patch does not fit inside the image");
    }
    std::vector<std::int64_t> entries(
        static_cast<std::size_t>(cfg.patch_rows) * cfg.patch_cols);
    for (int r = 0; r < cfg.patch_rows; ++r) {
        for (int c = 0; c < cfg.patch_cols; ++c) {
            entries[static_cast<std::size_t>(r) * cfg.patch_cols + c] =
                img.at(row + r, col + c);
        }
    }
    return CostMatrix(cfg.patch_rows, cfg.patch_cols, std::move(entries));
}

namespace {

std::pair<int, int> orientation_degrees(const CostMatrix& c) {
    return {build_polynomial(c).degree(), build_polynomial(c.transposed()).degree()};
}

}  // namespace

int patch_degree(const CostMatrix& c) {
    const auto [dv, dh] = orientation_degrees(c);
    return std::max(dv, dh);
}

DegreeMap scan(const QuantizedImage& img, const ScanConfig& cfg, int threads) {
    cfg.validate();
    if (img.height < cfg.patch_rows || img.width < cfg.patch_cols) {
        throw std::invalid_argument("scan: image is smaller than the patch");
    }

    DegreeMap dm;
    dm.grid_rows = (img.height - cfg.patch_rows) / cfg.stride + 1;
    dm.grid_cols = (img.width - cfg.patch_cols) / cfg.stride + 1;
    dm.cells.resize(static_cast<std::size_t>(dm.grid_rows) * dm.grid_cols);
    dm.image_width = img.width;
    dm.image_height = img.height;
    dm.patch_rows = cfg.patch_rows;
    dm.patch_cols = cfg.patch_cols;
    dm.stride = cfg.stride;

    auto run_rows = [&](int gr_begin, int gr_end) {
        for (int gr = gr_begin; gr < gr_end; ++gr) {
            for (int gc = 0; gc < dm.grid_cols; ++gc) {
                const CostMatrix patch =
                    patch_at(img, gr * cfg.stride, gc * cfg.stride, cfg);
                const auto [dv, dh] = orientation_degrees(patch);
                dm.at(gr, gc) = cfg.combine == Combine::Max ? std::max(dv, dh)
                                                            : std::min(dv, dh);
            }
        }
    };

    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    threads = std::min(threads, dm.grid_rows);

    if (threads == 1) {
        run_rows(0, dm.grid_rows);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        const int chunk = (dm.grid_rows + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(begin + chunk, dm.grid_rows);
            if (begin >= end) break;
            pool.emplace_back(run_rows, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }
    return dm;
}

EdgeMask classify_map(const DegreeMap& dm, int p) {
    if (p < 0) throw std::invalid_argument("classify_map: threshold must be nonnegative");
    EdgeMask mask(dm.image_width, dm.image_height);
    for (int gr = 0; gr < dm.grid_rows; ++gr) {
        for (int gc = 0; gc < dm.grid_cols; ++gc) {
            if (classify(dm.at(gr, gc), p) != Region::Edge) continue;
            const int r0 = gr * dm.stride;
            const int c0 = gc * dm.stride;
            for (int r = r0; r < r0 + dm.patch_rows; ++r) {
                for (int c = c0; c < c0 + dm.patch_cols; ++c) {
                    mask.at(r, c) = 255;
                }
            }
        }
    }
    return mask;
}

EdgeMask classify_map(const DegreeMap& dm, const ScanConfig& cfg) {
    cfg.validate();
    return classify_map(dm, cfg.hysteresis ? cfg.hysteresis->low
                                           : cfg.degree_threshold);
}

DegreeMap hysteresis_filter(const DegreeMap& dm, int low, int high) {
    if (low < 0 || low >= high) {
        throw std::invalid_argument("hysteresis_filter: need 0 <= low < high");
    }
    DegreeMap out = dm;
    std::fill(out.cells.begin(), out.cells.end(), 0);

    std::vector<char> kept(dm.cells.size(), 0);
    std::deque<std::pair<int, int>> frontier;
    for (int gr = 0; gr < dm.grid_rows; ++gr) {
        for (int gc = 0; gc < dm.grid_cols; ++gc) {
            if (dm.at(gr, gc) > high) {
                kept[static_cast<std::size_t>(gr) * dm.grid_cols + gc] = 1;
                frontier.emplace_back(gr, gc);
            }
        }
    }
    while (!frontier.empty()) {
        const auto [gr, gc] = frontier.front();
        frontier.pop_front();
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                const int nr = gr + dr;
                const int nc = gc + dc;
                if (nr < 0 || nc < 0 || nr >= dm.grid_rows || nc >= dm.grid_cols) {
                    continue;
                }
                const std::size_t idx =
                    static_cast<std::size_t>(nr) * dm.grid_cols + nc;
                if (kept[idx] || dm.at(nr, nc) <= low) continue;
                kept[idx] = 1;
                frontier.emplace_back(nr, nc);
            }
        }
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i]) out.cells[i] = dm.cells[i];
    }
    return out;
}

std::vector<PatchGroup> group_equivalent(const QuantizedImage& img,
                                         const ScanConfig& cfg) {
    cfg.validate();
    if (img.height < cfg.patch_rows || img.width < cfg.patch_cols) {
        throw std::invalid_argument("group_equivalent: image is smaller than the patch");
    }
    std::vector<PatchGroup> groups;
    std::unordered_map<std::string, std::size_t> index;
    for (int row = 0; row + cfg.patch_rows <= img.height; row += cfg.stride) {
        for (int col = 0; col + cfg.patch_cols <= img.width; col += cfg.stride) {
            PseudoBooleanPolynomial poly =
                build_polynomial(patch_at(img, row, col, cfg));
            std::string key = to_canonical_string(poly);
            auto [it, inserted] = index.try_emplace(std::move(key), groups.size());
            if (inserted) {
                groups.push_back({std::move(poly), {}});
            }
            groups[it->second].positions.push_back({row, col});
        }
    }
    return groups;
}

}  // namespace pbp
