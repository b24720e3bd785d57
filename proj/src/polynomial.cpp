#include "pbp/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pbp {

namespace {

constexpr int kMaxDim = 65535;

void check_dims_match(int ar, int ac, int br, int bc, const char* what) {
    if (ar != br || ac != bc) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

void check_permutation(const PermutationMatrix& pi) {
    std::vector<bool> seen(static_cast<std::size_t>(pi.rows));
    for (int c = 0; c < pi.cols; ++c) {
        std::fill(seen.begin(), seen.end(), false);
        for (int r = 0; r < pi.rows; ++r) {
            std::int32_t v = pi.at(r, c);
            if (v < 0 || v >= pi.rows || seen[static_cast<std::size_t>(v)]) {
                throw std::invalid_argument(
                    "permutation matrix column is not a permutation");
            }
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
}

}  // namespace

CostMatrix::CostMatrix(int rows, int cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ < 1 || cols_ < 1) {
        throw std::invalid_argument("cost matrix needs at least one row and column");
    }
    if (rows_ > kMaxDim || cols_ > kMaxDim) {
        throw std::invalid_argument("cost matrix dimension exceeds 65535");
    }
    if (data_.size() != static_cast<std::size_t>(rows_) * cols_) {
        throw std::invalid_argument("cost matrix entry count does not match dimensions");
    }
    const std::int64_t cells = static_cast<std::int64_t>(rows_) * cols_;
    const std::int64_t entry_cap = std::numeric_limits<std::int64_t>::max() / cells;
    for (std::int64_t v : data_) {
        if (v < 0) {
            throw std::invalid_argument("cost matrix entries must be nonnegative");
        }
        if (v > entry_cap) {
            throw std::invalid_argument("cost matrix entry too large for exact sums");
        }
    }
}

CostMatrix CostMatrix::transposed() const {
    std::vector<std::int64_t> out(data_.size());
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            out[static_cast<std::size_t>(c) * rows_ + r] = at(r, c);
        }
    }
    return CostMatrix(cols_, rows_, std::move(out));
}

bool canonical_less(const Monomial& a, const Monomial& b) {
    if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size();
    // Colex on ascending tuples: compare from the largest variable down.
    for (std::size_t i = a.vars.size(); i-- > 0;) {
        if (a.vars[i] != b.vars[i]) return a.vars[i] < b.vars[i];
    }
    return false;
}

PseudoBooleanPolynomial::PseudoBooleanPolynomial(int source_rows,
                                                 std::vector<Monomial> terms)
    : source_rows_(source_rows), terms_(std::move(terms)) {
    if (source_rows_ < 1) {
        throw std::invalid_argument("polynomial needs at least one source row");
    }
    bool sorted = true;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Monomial& m = terms_[i];
        if (m.coef < 0) {
            throw std::invalid_argument("monomial coefficient must be nonnegative");
        }
        for (std::size_t k = 0; k < m.vars.size(); ++k) {
            if (m.vars[k] >= source_rows_) {
                throw std::invalid_argument("monomial variable outside source rows");
            }
            if (k > 0 && m.vars[k] <= m.vars[k - 1]) {
                throw std::invalid_argument("monomial variables must be strictly ascending");
            }
        }
        if (static_cast<int>(m.vars.size()) > source_rows_ - 1) {
            throw std::invalid_argument("monomial degree exceeds source rows - 1");
        }
        if (i > 0 && !canonical_less(terms_[i - 1], terms_[i])) sorted = false;
    }
    if (!sorted) {
        std::sort(terms_.begin(), terms_.end(), canonical_less);
    }
    // Aggregate equal variable sets, drop zero coefficients.
    std::vector<Monomial> reduced;
    reduced.reserve(terms_.size());
    for (Monomial& m : terms_) {
        if (!reduced.empty() && reduced.back().vars == m.vars) {
            reduced.back().coef += m.coef;
        } else {
            reduced.push_back(std::move(m));
        }
    }
    std::erase_if(reduced, [](const Monomial& m) { return m.coef == 0; });
    terms_ = std::move(reduced);
}

int PseudoBooleanPolynomial::degree() const {
    return terms_.empty() ? 0 : terms_.back().degree();
}

std::int64_t PseudoBooleanPolynomial::constant_term() const {
    if (!terms_.empty() && terms_.front().vars.empty()) return terms_.front().coef;
    return 0;
}

std::int64_t PseudoBooleanPolynomial::evaluate(const std::vector<bool>& y) const {
    if (static_cast<int>(y.size()) != source_rows_) {
        throw std::invalid_argument("assignment length does not match source rows");
    }
    std::int64_t total = 0;
    for (const Monomial& m : terms_) {
        bool active = true;
        for (std::uint16_t v : m.vars) {
            if (!y[v]) {
                active = false;
                break;
            }
        }
        if (active) total += m.coef;
    }
    return total;
}

PermutationMatrix permutation_matrix(const CostMatrix& c) {
    const int m = c.rows();
    const int n = c.cols();
    PermutationMatrix pi;
    pi.rows = m;
    pi.cols = n;
    pi.order.resize(static_cast<std::size_t>(m) * n);
    for (int col = 0; col < n; ++col) {
        std::int32_t* dst = pi.order.data() + static_cast<std::size_t>(col) * m;
        std::iota(dst, dst + m, 0);
        std::sort(dst, dst + m, [&](std::int32_t a, std::int32_t b) {
            const std::int64_t va = c.at(a, col);
            const std::int64_t vb = c.at(b, col);
            if (va != vb) return va < vb;
            return a < b;  // ties keep the lower source row first
        });
    }
    return pi;
}

CostMatrix sort_columns(const CostMatrix& c, const PermutationMatrix& pi) {
    check_dims_match(c.rows(), c.cols(), pi.rows, pi.cols, "sort_columns");
    check_permutation(pi);
    std::vector<std::int64_t> out(static_cast<std::size_t>(c.rows()) * c.cols());
    for (int r = 0; r < c.rows(); ++r) {
        for (int col = 0; col < c.cols(); ++col) {
            out[static_cast<std::size_t>(r) * c.cols() + col] = c.at(pi.at(r, col), col);
        }
    }
    return CostMatrix(c.rows(), c.cols(), std::move(out));
}

DeltaMatrix delta_matrix(const CostMatrix& sorted) {
    const int m = sorted.rows();
    const int n = sorted.cols();
    DeltaMatrix d;
    d.rows = m;
    d.cols = n;
    d.delta.resize(static_cast<std::size_t>(m) * n);
    for (int col = 0; col < n; ++col) {
        std::int64_t prev = sorted.at(0, col);
        d.delta[static_cast<std::size_t>(col) * m] = prev;
        for (int r = 1; r < m; ++r) {
            const std::int64_t cur = sorted.at(r, col);
            if (cur < prev) {
                throw std::invalid_argument("delta_matrix: column " +
                                            std::to_string(col + 1) + " decreases");
            }
            d.delta[static_cast<std::size_t>(col) * m + r] = cur - prev;
            prev = cur;
        }
    }
    return d;
}

namespace {

// Aggregation for matrices with at most 64 rows: variable sets live in a
// bitmask, and (popcount, mask) ordering coincides with the canonical
// (degree, colex) order.
std::vector<Monomial> aggregate_masked(const DeltaMatrix& delta,
                                       const PermutationMatrix& pi) {
    const int m = delta.rows;
    const int n = delta.cols;
    std::vector<std::pair<std::uint64_t, std::int64_t>> cand;
    cand.reserve(static_cast<std::size_t>(m) * n);
    for (int col = 0; col < n; ++col) {
        std::uint64_t mask = 0;
        for (int r = 0; r < m; ++r) {
            const std::int64_t coef = delta.at(r, col);
            if (coef != 0) cand.emplace_back(mask, coef);
            mask |= std::uint64_t{1} << pi.at(r, col);
        }
    }
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) {
                  const int pa = std::popcount(a.first);
                  const int pb = std::popcount(b.first);
                  if (pa != pb) return pa < pb;
                  return a.first < b.first;
              });
    std::vector<Monomial> terms;
    terms.reserve(cand.size());
    for (std::size_t i = 0; i < cand.size();) {
        const std::uint64_t mask = cand[i].first;
        std::int64_t coef = 0;
        for (; i < cand.size() && cand[i].first == mask; ++i) coef += cand[i].second;
        Monomial mono;
        mono.coef = coef;
        mono.vars.reserve(static_cast<std::size_t>(std::popcount(mask)));
        for (int v = 0; v < m; ++v) {
            if (mask >> v & 1) mono.vars.push_back(static_cast<std::uint16_t>(v));
        }
        terms.push_back(std::move(mono));
    }
    return terms;
}

std::vector<Monomial> aggregate_general(const DeltaMatrix& delta,
                                        const PermutationMatrix& pi) {
    const int m = delta.rows;
    const int n = delta.cols;
    std::vector<Monomial> cand;
    for (int col = 0; col < n; ++col) {
        std::vector<std::uint16_t> vars;
        vars.reserve(static_cast<std::size_t>(m));
        for (int r = 0; r < m; ++r) {
            const std::int64_t coef = delta.at(r, col);
            if (coef != 0) cand.push_back({coef, vars});
            const auto v = static_cast<std::uint16_t>(pi.at(r, col));
            vars.insert(std::lower_bound(vars.begin(), vars.end(), v), v);
        }
    }
    std::sort(cand.begin(), cand.end(), canonical_less);
    std::vector<Monomial> terms;
    terms.reserve(cand.size());
    for (Monomial& mono : cand) {
        if (!terms.empty() && terms.back().vars == mono.vars) {
            terms.back().coef += mono.coef;
        } else {
            terms.push_back(std::move(mono));
        }
    }
    return terms;
}

}  // namespace

PseudoBooleanPolynomial build_polynomial(const DeltaMatrix& delta,
                                         const PermutationMatrix& pi) {
    check_dims_match(delta.rows, delta.cols, pi.rows, pi.cols, "build_polynomial");
    check_permutation(pi);
    for (std::int64_t v : delta.delta) {
        if (v < 0) throw std::invalid_argument("delta matrix entries must be nonnegative");
    }
    std::vector<Monomial> terms = delta.rows <= 64 ? aggregate_masked(delta, pi)
                                                   : aggregate_general(delta, pi);
    return PseudoBooleanPolynomial(delta.rows, std::move(terms));
}

PseudoBooleanPolynomial build_polynomial(const CostMatrix& c) {
    const PermutationMatrix pi = permutation_matrix(c);
    return build_polynomial(delta_matrix(sort_columns(c, pi)), pi);
}

PseudoBooleanPolynomial truncate(const PseudoBooleanPolynomial& poly, int max_degree) {
    if (max_degree < 0) {
        throw std::invalid_argument("truncation degree must be nonnegative");
    }
    std::vector<Monomial> kept;
    kept.reserve(poly.terms().size());
    for (const Monomial& m : poly.terms()) {
        if (m.degree() <= max_degree) kept.push_back(m);
    }
    return PseudoBooleanPolynomial(poly.source_rows(), std::move(kept));
}

bool canonical_equal(const PseudoBooleanPolynomial& a,
                     const PseudoBooleanPolynomial& b) {
    return a.terms() == b.terms();
}

std::string to_canonical_string(const PseudoBooleanPolynomial& poly) {
    if (poly.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const Monomial& m : poly.terms()) {
        if (!first) out += " + ";
        first = false;
        out += std::to_string(m.coef);
        for (std::uint16_t v : m.vars) {
            out += "*y";
            out += std::to_string(v + 1);
        }
    }
    return out;
}

}  // namespace pbp
