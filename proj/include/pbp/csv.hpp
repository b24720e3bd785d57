#pragma once

#include <string>
#include <string_view>

#include "pbp/polynomial.hpp"
#include "pbp/scanner.hpp"

namespace pbp {

// Parses a rectangular grid of nonnegative integers: rows separated by
// newlines, cells by commas. Throws ParseError on ragged rows, signs,
// or non-integer tokens.
CostMatrix read_matrix_csv(std::string_view text);

std::string write_matrix_csv(const CostMatrix& m);

// Degree cells, row-major, comma separated, newline per grid row.
std::string write_degree_csv(const DegreeMap& dm);

}  // namespace pbp
