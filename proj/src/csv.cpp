#include "pbp/csv.hpp"

#include <charconv>
#include <cstdint>
#include <vector>

#include "pbp/pgm.hpp"

namespace pbp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_entry(std::string_view token, int row, int col) {
    const std::string_view t = trim(token);
    const std::string where =
        " at row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
    if (t.empty()) throw ParseError("empty cell" + where);
    if (t.front() == '-' || t.front() == '+') {
        throw ParseError("entry must be a nonnegative integer" + where);
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError("entry out of range" + where);
    }
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ParseError("invalid entry '" + std::string(t) + "'" + where);
    }
    return value;
}

}  // namespace

CostMatrix read_matrix_csv(std::string_view text) {
    std::vector<std::int64_t> entries;
    int rows = 0;
    int cols = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        if (trim(line).empty()) {
            if (pos >= text.size()) break;  // trailing newline
            throw ParseError("blank row at line " + std::to_string(rows + 1));
        }

        int col = 0;
        std::size_t cell_start = 0;
        while (true) {
            const std::size_t comma = line.find(',', cell_start);
            const std::string_view token =
                line.substr(cell_start, comma == std::string_view::npos
                                            ? std::string_view::npos
                                            : comma - cell_start);
            entries.push_back(parse_entry(token, rows, col));
            ++col;
            if (comma == std::string_view::npos) break;
            cell_start = comma + 1;
        }

        if (rows == 0) {
            cols = col;
        } else if (col != cols) {
            throw ParseError("ragged row " + std::to_string(rows + 1) + ": has " +
                             std::to_string(col) + " cells, expected " +
                             std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) throw ParseError("empty matrix text");
    try {
        return CostMatrix(rows, cols, std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string write_matrix_csv(const CostMatrix& m) {
    std::string out;
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ',';
            out += std::to_string(m.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string write_degree_csv(const DegreeMap& dm) {
    std::string out;
    for (int gr = 0; gr < dm.grid_rows; ++gr) {
        for (int gc = 0; gc < dm.grid_cols; ++gc) {
            if (gc > 0) out += ',';
            out += std::to_string(dm.at(gr, gc));
        }
        out += '\n';
    }
    return out;
}

}  // namespace pbp
