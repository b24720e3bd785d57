#pragma once

#include <string>
#include <vector>

#include "pbp/preprocess.hpp"
#include "pbp/scanner.hpp"
#include "pbp/sobel.hpp"

namespace pbp {

struct PipelineConfig {
    PreprocessConfig pre;
    ScanConfig scan;
    int threads = 0;  // <= 0 picks the hardware thread count

    void validate() const;
};

struct DetectResult {
    QuantizedImage quantized;
    DegreeMap degrees;  // after the optional hysteresis pass
    EdgeMask mask;
    std::vector<std::string> warnings;
};

// gray -> blur -> quantize -> scan -> optional hysteresis -> classify.
// With hysteresis enabled the mask keeps surviving cells above the low
// band; otherwise the degree threshold applies directly.
DetectResult run_detect(const GrayImage& gray, const PipelineConfig& cfg);

struct CompareResult {
    EdgeMask pbp_mask;
    EdgeMask sobel_mask;
    EdgeMask diff;  // 255 where the two masks disagree
    std::int64_t pbp_edge_px = 0;
    std::int64_t sobel_edge_px = 0;
    double agreement = 1.0;
    std::vector<std::string> warnings;
};

// Runs the polynomial pipeline and a Sobel baseline (on the same
// blurred grayscale) side by side.
CompareResult run_compare(const GrayImage& gray, const PipelineConfig& cfg,
                          int sobel_threshold);

}  // namespace pbp
