#include "pbp/pgm.hpp"

#include <charconv>
#include <cstddef>
#include <utility>
#include <vector>

// TODO: optional PNG import behind a build flag; PGM/PPM stay the only
// formats exercised by golden tests.

namespace pbp {

namespace {

bool is_pnm_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

void skip_space_and_comments(std::string_view s, std::size_t& pos) {
    while (pos < s.size()) {
        if (is_pnm_space(s[pos])) {
            ++pos;
        } else if (s[pos] == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
}

int read_header_int(std::string_view s, std::size_t& pos, const char* what) {
    skip_space_and_comments(s, pos);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(s.data() + pos, s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data() + pos) {
        throw ParseError(std::string("malformed header: expected ") + what);
    }
    pos = static_cast<std::size_t>(ptr - s.data());
    return value;
}

struct PnmHeader {
    std::string magic;
    int width = 0;
    int height = 0;
    int maxval = 0;
};

PnmHeader read_header(std::string_view s, std::size_t& pos) {
    skip_space_and_comments(s, pos);
    if (pos + 2 > s.size() || s[pos] != 'P') {
        throw ParseError("malformed header: missing magic number");
    }
    PnmHeader h;
    h.magic = std::string(s.substr(pos, 2));
    pos += 2;
    h.width = read_header_int(s, pos, "width");
    h.height = read_header_int(s, pos, "height");
    h.maxval = read_header_int(s, pos, "maxval");
    if (h.width < 1 || h.height < 1) {
        throw ParseError("malformed header: nonpositive dimensions");
    }
    if (h.maxval > 255) throw ParseError("maxval > 255 is not supported");
    if (h.maxval < 1) throw ParseError("malformed header: maxval must be positive");
    return h;
}

std::uint8_t rescale(int v, int maxval) {
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((v * 510 + maxval) / (2 * maxval));
}

std::vector<std::uint8_t> read_samples(std::string_view s, std::size_t pos,
                                       const PnmHeader& h, std::size_t count,
                                       bool binary) {
    std::vector<std::uint8_t> samples(count);
    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (pos >= s.size() || !is_pnm_space(s[pos])) {
            throw ParseError("malformed header: missing raster separator");
        }
        ++pos;
        if (s.size() - pos < count) throw ParseError("truncated pixel data");
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::uint8_t>(s[pos + i]);
            if (v > h.maxval) throw ParseError("sample exceeds maxval");
            samples[i] = rescale(v, h.maxval);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            skip_space_and_comments(s, pos);
            if (pos >= s.size()) throw ParseError("truncated pixel data");
            int v = 0;
            const auto [ptr, ec] =
                std::from_chars(s.data() + pos, s.data() + s.size(), v);
            if (ec != std::errc{} || ptr == s.data() + pos) {
                throw ParseError("malformed sample");
            }
            pos = static_cast<std::size_t>(ptr - s.data());
            if (v < 0 || v > h.maxval) throw ParseError("sample exceeds maxval");
            samples[i] = rescale(v, h.maxval);
        }
        skip_space_and_comments(s, pos);
        if (pos != s.size()) throw ParseError("trailing data after pixels");
    }
    return samples;
}

}  // namespace

GrayImage read_pgm(std::string_view bytes) {
    std::size_t pos = 0;
    const PnmHeader h = read_header(bytes, pos);
    if (h.magic != "P2" && h.magic != "P5") {
        throw ParseError("unsupported magic '" + h.magic + "' (expected P2 or P5)");
    }
    const auto count = static_cast<std::size_t>(h.width) * h.height;
    return GrayImage(h.width, h.height,
                     read_samples(bytes, pos, h, count, h.magic == "P5"));
}

RgbImage read_ppm(std::string_view bytes) {
    std::size_t pos = 0;
    const PnmHeader h = read_header(bytes, pos);
    if (h.magic != "P3" && h.magic != "P6") {
        throw ParseError("unsupported magic '" + h.magic + "' (expected P3 or P6)");
    }
    const auto count = static_cast<std::size_t>(h.width) * h.height * 3;
    return RgbImage(h.width, h.height,
                    read_samples(bytes, pos, h, count, h.magic == "P6"));
}

GrayImage read_image_auto(std::string_view bytes) {
    std::size_t pos = 0;
    skip_space_and_comments(bytes, pos);
    if (pos + 2 > bytes.size() || bytes[pos] != 'P') {
        throw ParseError("malformed header: missing magic number");
    }
    const char kind = bytes[pos + 1];
    if (kind == '2' || kind == '5') return read_pgm(bytes);
    if (kind == '3' || kind == '6') return to_gray(read_ppm(bytes));
    throw ParseError("unsupported magic (expected P2, P3, P5 or P6)");
}

namespace {

std::string write_gray_bytes(int width, int height,
                             const std::vector<std::uint8_t>& pixels,
                             PgmFormat format) {
    std::string out;
    out += format == PgmFormat::Binary ? "P5\n" : "P2\n";
    out += std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    if (format == PgmFormat::Binary) {
        out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    } else {
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                if (c > 0) out += ' ';
                out += std::to_string(pixels[static_cast<std::size_t>(r) * width + c]);
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace

std::string write_pgm(const GrayImage& img, PgmFormat format) {
    return write_gray_bytes(img.width, img.height, img.pixels, format);
}

std::string write_pgm(const EdgeMask& mask, PgmFormat format) {
    return write_gray_bytes(mask.width, mask.height, mask.pixels, format);
}

}  // namespace pbp
