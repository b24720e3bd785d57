#pragma once

#include <cstdint>
#include <vector>

#include "pbp/preprocess.hpp"
#include "pbp/scanner.hpp"

namespace pbp {

// Sobel gradients with replicate borders. magnitude is the rounded
// Euclidean norm of (gx, gy).
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> gx;
    std::vector<std::int32_t> gy;
    std::vector<std::int32_t> magnitude;

    std::int32_t gx_at(int r, int c) const {
        return gx[static_cast<std::size_t>(r) * width + c];
    }
    std::int32_t gy_at(int r, int c) const {
        return gy[static_cast<std::size_t>(r) * width + c];
    }
    std::int32_t magnitude_at(int r, int c) const {
        return magnitude[static_cast<std::size_t>(r) * width + c];
    }
};

// 3x3 Sobel operator; the image must be at least 3x3.
GradientField sobel(const GrayImage& img);

// Gradient direction in radians, computed on demand.
double sobel_direction(const GradientField& g, int r, int c);

// 255 where magnitude > threshold.
EdgeMask sobel_mask(const GradientField& g, int threshold);

}  // namespace pbp
