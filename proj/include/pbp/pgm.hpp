#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pbp/preprocess.hpp"
#include "pbp/scanner.hpp"

namespace pbp {

// Malformed input bytes or text.
class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PgmFormat { Binary, Ascii };  // P5 / P2

// Parses a PGM file (P2 or P5). Header comments (#) are allowed, maxval
// must be <= 255, and samples are rescaled to 0..255 when maxval
// differs.
GrayImage read_pgm(std::string_view bytes);

// Parses a PPM file (P3 or P6), same header rules.
RgbImage read_ppm(std::string_view bytes);

// Reads any of P2/P5/P3/P6; color input is converted through to_gray.
GrayImage read_image_auto(std::string_view bytes);

// Encodes with the fixed header "P5\n<w> <h>\n255\n" (or the P2
// equivalent). Binary round-trips are bit-exact.
std::string write_pgm(const GrayImage& img, PgmFormat format = PgmFormat::Binary);
std::string write_pgm(const EdgeMask& mask, PgmFormat format = PgmFormat::Binary);

}  // namespace pbp
