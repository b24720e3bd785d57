#include "pbp/sobel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbp {

GradientField sobel(const GrayImage& img) {
    if (img.width < 3 || img.height < 3) {
        throw std::invalid_argument("sobel: image must be at least 3x3");
    }
    const int w = img.width;
    const int h = img.height;
    GradientField g;
    g.width = w;
    g.height = h;
    g.gx.resize(static_cast<std::size_t>(w) * h);
    g.gy.resize(static_cast<std::size_t>(w) * h);
    g.magnitude.resize(static_cast<std::size_t>(w) * h);

    auto pix = [&](int r, int c) -> std::int32_t {
        return img.at(std::clamp(r, 0, h - 1), std::clamp(c, 0, w - 1));
    };

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::int32_t gx =
                -pix(r - 1, c - 1) + pix(r - 1, c + 1) +
                -2 * pix(r, c - 1) + 2 * pix(r, c + 1) +
                -pix(r + 1, c - 1) + pix(r + 1, c + 1);
            const std::int32_t gy =
                -pix(r - 1, c - 1) - 2 * pix(r - 1, c) - pix(r - 1, c + 1) +
                pix(r + 1, c - 1) + 2 * pix(r + 1, c) + pix(r + 1, c + 1);
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            g.gx[i] = gx;
            g.gy[i] = gy;
            g.magnitude[i] = static_cast<std::int32_t>(std::llround(
                std::sqrt(static_cast<double>(gx) * gx + static_cast<double>(gy) * gy)));
        }
    }
    return g;
}

double sobel_direction(const GradientField& g, int r, int c) {
    return std::atan2(static_cast<double>(g.gy_at(r, c)),
                      static_cast<double>(g.gx_at(r, c)));
}

EdgeMask sobel_mask(const GradientField& g, int threshold) {
    if (threshold < 0) {
        throw std::invalid_argument("sobel_mask: threshold must be nonnegative");
    }
    EdgeMask mask(g.width, g.height);
    for (std::size_t i = 0; i < g.magnitude.size(); ++i) {
        if (g.magnitude[i] > threshold) mask.pixels[i] = 255;
    }
    return mask;
}

}  // namespace pbp
