#include "pbp/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace pbp {

namespace {

void check_image_dims(int w, int h, std::size_t count, std::size_t per_pixel,
                      const char* what) {
    if (w < 1 || h < 1) {
        throw std::invalid_argument(std::string(what) + ": empty image");
    }
    if (count != static_cast<std::size_t>(w) * h * per_pixel) {
        throw std::invalid_argument(std::string(what) +
                                    ": pixel count does not match dimensions");
    }
}

}  // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
    check_image_dims(w, h, pixels.size(), 1, "GrayImage");
}

GrayImage::GrayImage(int w, int h, std::vector<std::uint8_t> px)
    : width(w), height(h), pixels(std::move(px)) {
    check_image_dims(w, h, pixels.size(), 1, "GrayImage");
}

RgbImage::RgbImage(int w, int h, std::vector<std::uint8_t> px)
    : width(w), height(h), pixels(std::move(px)) {
    check_image_dims(w, h, pixels.size(), 3, "RgbImage");
}

QuantizedImage::QuantizedImage(int w, int h, int levels_,
                               std::vector<std::uint8_t> px)
    : width(w), height(h), levels(levels_), pixels(std::move(px)) {
    check_image_dims(w, h, pixels.size(), 1, "QuantizedImage");
    if (levels < 2 || levels > 256) {
        throw std::invalid_argument("QuantizedImage: levels must be in [2, 256]");
    }
    for (std::uint8_t v : pixels) {
        if (v >= levels) {
            throw std::invalid_argument("QuantizedImage: pixel outside [0, levels)");
        }
    }
}

QuantizedImage QuantizedImage::transposed() const {
    std::vector<std::uint8_t> out(pixels.size());
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            out[static_cast<std::size_t>(c) * height + r] = at(r, c);
        }
    }
    return QuantizedImage(height, width, levels, std::move(out));
}

void PreprocessConfig::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be finite and nonnegative");
    }
    if (levels < 2 || levels > 256) {
        throw std::invalid_argument("levels must be in [2, 256]");
    }
}

GrayImage to_gray(const RgbImage& rgb) {
    GrayImage out(rgb.width, rgb.height);
    for (int r = 0; r < rgb.height; ++r) {
        for (int c = 0; c < rgb.width; ++c) {
            const int luma = (299 * rgb.at(r, c, 0) + 587 * rgb.at(r, c, 1) +
                              114 * rgb.at(r, c, 2) + 500) / 1000;
            out.at(r, c) = static_cast<std::uint8_t>(std::min(luma, 255));
        }
    }
    return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_blur: sigma must be finite and nonnegative");
    }
    if (sigma == 0.0) return img;

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double w = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(k + radius)] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;

    const int w = img.width;
    const int h = img.height;
    std::vector<double> horiz(static_cast<std::size_t>(w) * h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int cc = std::clamp(c + k, 0, w - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] * img.at(r, cc);
            }
            horiz[static_cast<std::size_t>(r) * w + c] = acc;
        }
    }
    GrayImage out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int rr = std::clamp(r + k, 0, h - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       horiz[static_cast<std::size_t>(rr) * w + c];
            }
            const long long v = std::llround(acc);
            out.at(r, c) = static_cast<std::uint8_t>(std::clamp(v, 0LL, 255LL));
        }
    }
    return out;
}

QuantizedImage quantize(const GrayImage& img, int levels, Quantizer mode,
                        std::vector<std::string>* warnings) {
    if (levels < 2 || levels > 256) {
        throw std::invalid_argument("quantize: levels must be in [2, 256]");
    }

    std::array<std::uint8_t, 256> lut{};
    bool use_uniform = mode == Quantizer::Uniform;

    if (mode == Quantizer::Quantile) {
        std::array<std::int64_t, 256> cum{};
        for (std::uint8_t v : img.pixels) ++cum[v];
        for (int v = 1; v < 256; ++v) cum[v] += cum[v - 1];
        const std::int64_t total = cum[255];

        std::vector<int> thresholds;
        thresholds.reserve(static_cast<std::size_t>(levels - 1));
        int v = 0;
        bool degenerate = false;
        for (int k = 1; k < levels; ++k) {
            while (v < 255 && cum[v] * levels < total * k) ++v;
            if (!thresholds.empty() && thresholds.back() == v) {
                degenerate = true;
                break;
            }
            thresholds.push_back(v);
        }
        if (degenerate) {
            if (warnings) {
                warnings->push_back(
                    "quantile thresholds are degenerate; falling back to uniform");
            }
            use_uniform = true;
        } else {
            // A value equal to a threshold stays in the lower bin.
            for (int val = 0; val < 256; ++val) {
                int bin = 0;
                for (int t : thresholds) {
                    if (t < val) ++bin;
                }
                lut[static_cast<std::size_t>(val)] = static_cast<std::uint8_t>(bin);
            }
        }
    }

    if (use_uniform) {
        for (int val = 0; val < 256; ++val) {
            lut[static_cast<std::size_t>(val)] =
                static_cast<std::uint8_t>(val * levels / 256);
        }
    }

    std::vector<std::uint8_t> out(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out[i] = lut[img.pixels[i]];
    }
    return QuantizedImage(img.width, img.height, levels, std::move(out));
}

}  // namespace pbp
