#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pbp/polynomial.hpp"
#include "pbp/preprocess.hpp"

namespace pbp {

// How the two patch orientations combine into one cell value. Max takes
// the larger of the two degrees, Both takes the smaller so a cell only
// classifies as edge when both orientations do.
enum class Combine { Max, Both };

struct HysteresisBand {
    int low = 1;
    int high = 3;
};

struct ScanConfig {
    int patch_rows = 6;
    int patch_cols = 6;
    int stride = 1;
    int degree_threshold = 3;
    Combine combine = Combine::Max;
    std::optional<HysteresisBand> hysteresis;

    void validate() const;
};

// Grid of combined polynomial degrees, one cell per patch position.
// Patch geometry is carried along so cells can be mapped back to pixel
// footprints; trailing pixels not covered by a full patch are outside
// covered_width/height.
struct DegreeMap {
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<int> cells;  // row-major

    int image_width = 0;
    int image_height = 0;
    int patch_rows = 0;
    int patch_cols = 0;
    int stride = 1;

    int at(int gr, int gc) const {
        return cells[static_cast<std::size_t>(gr) * grid_cols + gc];
    }
    int& at(int gr, int gc) {
        return cells[static_cast<std::size_t>(gr) * grid_cols + gc];
    }

    int covered_width() const { return (grid_cols - 1) * stride + patch_cols; }
    int covered_height() const { return (grid_rows - 1) * stride + patch_rows; }

    bool operator==(const DegreeMap&) const = default;
};

// Binary image; pixels are 0 or 255.
struct EdgeMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    EdgeMask() = default;
    EdgeMask(int w, int h);

    std::uint8_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    std::uint8_t& at(int r, int c) {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }

    std::int64_t edge_pixel_count() const;

    bool operator==(const EdgeMask&) const = default;
};

struct PatchPos {
    int row = 0;
    int col = 0;

    bool operator==(const PatchPos&) const = default;
};

struct PatchGroup {
    PseudoBooleanPolynomial polynomial;
    std::vector<PatchPos> positions;
};

// Copies the patch with top-left pixel (row, col) out of the image.
CostMatrix patch_at(const QuantizedImage& img, int row, int col,
                    const ScanConfig& cfg);

// Max of the polynomial degrees of the patch and its transpose.
int patch_degree(const CostMatrix& c);

// Slides patches across the image at the configured stride and records
// the combined degree per position. Patch positions are independent, so
// the work may be split across `threads` workers; the output is
// identical for any thread count.
DegreeMap scan(const QuantizedImage& img, const ScanConfig& cfg, int threads = 1);

// OR-voting mask: every pixel covered by at least one cell with
// degree > p becomes 255.
EdgeMask classify_map(const DegreeMap& dm, int p);

// Same, with the threshold taken from the config: the hysteresis low
// band when hysteresis is set, degree_threshold otherwise.
EdgeMask classify_map(const DegreeMap& dm, const ScanConfig& cfg);

// Keeps cells with degree > high, plus cells with low < degree <= high
// that connect to a kept cell through an 8-connected chain of such
// cells. Everything else becomes 0.
DegreeMap hysteresis_filter(const DegreeMap& dm, int low, int high);

// Partition of patch positions by canonical equality of their reduced
// polynomials (vertical orientation). Groups appear in order of first
// occurrence; positions within a group follow scan order.
std::vector<PatchGroup> group_equivalent(const QuantizedImage& img,
                                         const ScanConfig& cfg);

}  // namespace pbp
