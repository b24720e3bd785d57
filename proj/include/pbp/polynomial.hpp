#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Penalty-based pseudo-Boolean polynomial algebra over integer cost
// matrices. Each column of a matrix is sorted non-decreasingly, first
// differences are taken, and every difference becomes a monomial whose
// variables are the rows ranked below it in that column. Monomials with
// identical variable sets aggregate across columns, which is what makes
// structurally similar patches converge to the same reduced polynomial.

namespace pbp {

// m x n grid of nonnegative integer intensities. Rows play the role of
// spatial regions, columns are pixel positions. Entries are bounded at
// construction so that any sum taken over the whole matrix fits int64.
class CostMatrix {
public:
    CostMatrix() = default;
    CostMatrix(int rows, int cols, std::vector<std::int64_t> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    const std::vector<std::int64_t>& data() const { return data_; }

    CostMatrix transposed() const;

    bool operator==(const CostMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int64_t> data_;
};

// Per-column index orderings that sort each column of the source matrix
// non-decreasingly. at(rank, col) is the 0-based source row of the entry
// ranked `rank` in column `col`; equal values keep the lower source row
// first.
struct PermutationMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int32_t> order;  // column-major: cols blocks of rows

    std::int32_t at(int rank, int col) const {
        return order[static_cast<std::size_t>(col) * rows + rank];
    }
};

// Per-column first differences of the sorted matrix; rank 0 holds the
// column minimum. All entries are nonnegative.
struct DeltaMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> delta;  // column-major

    std::int64_t at(int rank, int col) const {
        return delta[static_cast<std::size_t>(col) * rows + rank];
    }
};

// One aggregated term: positive coefficient times a product of Boolean
// variables. Variables are 0-based row indices, sorted ascending; an
// empty set is the constant term.
struct Monomial {
    std::int64_t coef = 0;
    std::vector<std::uint16_t> vars;

    int degree() const { return static_cast<int>(vars.size()); }

    bool operator==(const Monomial&) const = default;
};

// Canonical term order: degree ascending, then colexicographic on the
// sorted variable tuples (compare largest variable first). This is the
// order the reduced polynomial is stored and serialized in.
bool canonical_less(const Monomial& a, const Monomial& b);

// Fully reduced polynomial: no two terms share a variable set, zero
// coefficients are dropped, terms are in canonical order. The degree is
// at most source_rows - 1.
class PseudoBooleanPolynomial {
public:
    PseudoBooleanPolynomial() = default;

    // Canonicalizes `terms` (sorts, aggregates equal variable sets,
    // drops zero coefficients) and validates the invariants.
    PseudoBooleanPolynomial(int source_rows, std::vector<Monomial> terms);

    int source_rows() const { return source_rows_; }
    const std::vector<Monomial>& terms() const { return terms_; }

    // Largest variable-set size among stored terms; 0 when constant or empty.
    int degree() const;

    // Coefficient of the empty variable set (0 when absent).
    std::int64_t constant_term() const;

    // Value at a Boolean assignment; y must have source_rows entries.
    std::int64_t evaluate(const std::vector<bool>& y) const;

private:
    int source_rows_ = 1;
    std::vector<Monomial> terms_;
};

PermutationMatrix permutation_matrix(const CostMatrix& c);

// Reorders every column of `c` by `pi`; the result is non-decreasing
// top to bottom in each column.
CostMatrix sort_columns(const CostMatrix& c, const PermutationMatrix& pi);

// First differences down each column of an already sorted matrix.
// Throws if a column decreases.
DeltaMatrix delta_matrix(const CostMatrix& sorted);

// Aggregates the per-column difference terms into the reduced
// polynomial: rank r of column j contributes delta(r, j) times the
// product of variables order(0, j) .. order(r-1, j).
PseudoBooleanPolynomial build_polynomial(const DeltaMatrix& delta,
                                         const PermutationMatrix& pi);

// The full construction: permutation, sort, differences, aggregation.
PseudoBooleanPolynomial build_polynomial(const CostMatrix& c);

// Polynomial with every term of degree > max_degree removed.
PseudoBooleanPolynomial truncate(const PseudoBooleanPolynomial& poly,
                                 int max_degree);

// True iff the reduced term lists are identical (same variable sets,
// same coefficients). Equivalent to equal canonical serializations.
bool canonical_equal(const PseudoBooleanPolynomial& a,
                     const PseudoBooleanPolynomial& b);

enum class Region { Blob, Edge };

// Degree-threshold classifier: Edge iff d > p.
inline Region classify(int d, int p) {
    return d > p ? Region::Edge : Region::Blob;
}

// Canonical text form, e.g. "11 + 11*y3 + 3*y4 + 2*y1*y3". Variables are
// printed 1-based. The empty polynomial serializes as "0".
std::string to_canonical_string(const PseudoBooleanPolynomial& poly);

}  // namespace pbp
