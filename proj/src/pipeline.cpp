#include "pbp/pipeline.hpp"

namespace pbp {

void PipelineConfig::validate() const {
    pre.validate();
    scan.validate();
}

DetectResult run_detect(const GrayImage& gray, const PipelineConfig& cfg) {
    cfg.validate();
    DetectResult result;
    const GrayImage blurred = gaussian_blur(gray, cfg.pre.sigma);
    result.quantized =
        quantize(blurred, cfg.pre.levels, cfg.pre.quantizer, &result.warnings);
    result.degrees = scan(result.quantized, cfg.scan, cfg.threads);
    if (cfg.scan.hysteresis) {
        result.degrees = hysteresis_filter(result.degrees, cfg.scan.hysteresis->low,
                                           cfg.scan.hysteresis->high);
    }
    result.mask = classify_map(result.degrees, cfg.scan);
    return result;
}

CompareResult run_compare(const GrayImage& gray, const PipelineConfig& cfg,
                          int sobel_threshold) {
    cfg.validate();
    CompareResult result;

    DetectResult detect = run_detect(gray, cfg);
    result.pbp_mask = std::move(detect.mask);
    result.warnings = std::move(detect.warnings);

    const GrayImage blurred = gaussian_blur(gray, cfg.pre.sigma);
    result.sobel_mask = sobel_mask(sobel(blurred), sobel_threshold);

    result.diff = EdgeMask(gray.width, gray.height);
    std::int64_t disagree = 0;
    for (std::size_t i = 0; i < result.diff.pixels.size(); ++i) {
        if (result.pbp_mask.pixels[i] != result.sobel_mask.pixels[i]) {
            result.diff.pixels[i] = 255;
            ++disagree;
        }
    }
    result.pbp_edge_px = result.pbp_mask.edge_pixel_count();
    result.sobel_edge_px = result.sobel_mask.edge_pixel_count();
    const auto total = static_cast<double>(result.diff.pixels.size());
    result.agreement = 1.0 - static_cast<double>(disagree) / total;
    return result;
}

}  // namespace pbp
