#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pbp {

// 8-bit grayscale image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);
    GrayImage(int w, int h, std::vector<std::uint8_t> px);

    std::uint8_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    std::uint8_t& at(int r, int c) {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }

    bool operator==(const GrayImage&) const = default;
};

// 8-bit interleaved RGB image, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // r,g,b per pixel

    RgbImage() = default;
    RgbImage(int w, int h, std::vector<std::uint8_t> px);

    std::uint8_t at(int r, int c, int channel) const {
        return pixels[(static_cast<std::size_t>(r) * width + c) * 3 + channel];
    }
};

// Grayscale image reduced to `levels` intensity bins; pixels lie in
// [0, levels - 1].
struct QuantizedImage {
    int width = 0;
    int height = 0;
    int levels = 2;
    std::vector<std::uint8_t> pixels;

    QuantizedImage() = default;
    QuantizedImage(int w, int h, int levels_, std::vector<std::uint8_t> px);

    std::uint8_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }

    QuantizedImage transposed() const;

    bool operator==(const QuantizedImage&) const = default;
};

enum class Quantizer { Uniform, Quantile };

struct PreprocessConfig {
    double sigma = 1.0;
    int levels = 10;
    Quantizer quantizer = Quantizer::Uniform;

    void validate() const;
};

// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B). Pixels that are
// already gray (R == G == B) map to themselves.
GrayImage to_gray(const RgbImage& rgb);

// Separable Gaussian blur with kernel radius ceil(3 sigma) and replicate
// borders. Intermediate sums stay in double; the result is rounded to
// the nearest integer once at the end. sigma == 0 returns the input.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

// Reduce the 0..255 range to `levels` bins. Uniform mode maps
// v -> floor(v * levels / 256). Quantile mode places levels - 1
// thresholds at the empirical quantiles of the histogram, a value equal
// to a threshold falls in the lower bin. A degenerate histogram (the
// quantile thresholds collapse) falls back to uniform and appends a
// note to `warnings` when given.
QuantizedImage quantize(const GrayImage& img, int levels, Quantizer mode,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace pbp
