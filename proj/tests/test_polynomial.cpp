#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "pbp/polynomial.hpp"
#include "test_support.hpp"

using namespace pbp;
using namespace pbptest;

namespace {

Monomial mono(std::int64_t coef, std::vector<std::uint16_t> vars) {
    return Monomial{coef, std::move(vars)};
}

}  // namespace

TEST_SUITE("permutation_matrix") {
    TEST_CASE("worked example ordering") {
        const PermutationMatrix pi = permutation_matrix(worked_matrix());
        // Expected order (1-based in the write-up): column-wise
        // (4,1,2,3), (3,2,1,4), (3,2,1,4), (3,1,2,4).
        const std::vector<std::vector<int>> expect = {
            {3, 0, 1, 2}, {2, 1, 0, 3}, {2, 1, 0, 3}, {2, 0, 1, 3}};
        for (int col = 0; col < 4; ++col) {
            for (int rank = 0; rank < 4; ++rank) {
                CHECK(pi.at(rank, col) == expect[col][rank]);
            }
        }
    }

    TEST_CASE("all-equal column breaks ties by source row") {
        const CostMatrix c = make_matrix(2, 2, {99, 99, 99, 99});
        const PermutationMatrix pi = permutation_matrix(c);
        for (int col = 0; col < 2; ++col) {
            CHECK(pi.at(0, col) == 0);
            CHECK(pi.at(1, col) == 1);
        }
    }

    TEST_CASE("matches a stable sort oracle") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const CostMatrix c = random_matrix(rng);
            const PermutationMatrix pi = permutation_matrix(c);
            for (int col = 0; col < c.cols(); ++col) {
                std::vector<int> idx(static_cast<std::size_t>(c.rows()));
                std::iota(idx.begin(), idx.end(), 0);
                std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
                    return c.at(a, col) < c.at(b, col);
                });
                for (int rank = 0; rank < c.rows(); ++rank) {
                    CHECK(pi.at(rank, col) == idx[static_cast<std::size_t>(rank)]);
                }
            }
        }
    }
}

TEST_SUITE("sort_columns") {
    TEST_CASE("worked example") {
        const CostMatrix c = worked_matrix();
        const CostMatrix sorted = sort_columns(c, permutation_matrix(c));
        CHECK(sorted == make_matrix(4, 4,
                                    {5, 2, 3, 1,
                                     8, 7, 5, 5,
                                     12, 8, 8, 7,
                                     18, 18, 9, 8}));
    }

    TEST_CASE("identity on a constant matrix") {
        const CostMatrix c = patch_a();
        CHECK(sort_columns(c, permutation_matrix(c)) == c);
    }

    TEST_CASE("columns become the sorted multiset of the input column") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const CostMatrix c = random_matrix(rng);
            const CostMatrix sorted = sort_columns(c, permutation_matrix(c));
            for (int col = 0; col < c.cols(); ++col) {
                std::vector<std::int64_t> expect;
                for (int r = 0; r < c.rows(); ++r) expect.push_back(c.at(r, col));
                std::sort(expect.begin(), expect.end());
                for (int r = 0; r < c.rows(); ++r) {
                    CHECK(sorted.at(r, col) == expect[static_cast<std::size_t>(r)]);
                }
            }
        }
    }

    TEST_CASE("rejects mismatched dimensions") {
        const PermutationMatrix pi = permutation_matrix(worked_matrix());
        CHECK_THROWS_AS(
            sort_columns(make_matrix(4, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}),
                         pi),
            std::invalid_argument);
        CHECK_THROWS_AS(sort_columns(make_matrix(2, 2, {1, 2, 3, 4}), pi),
                        std::invalid_argument);
    }
}

TEST_SUITE("delta_matrix") {
    TEST_CASE("worked example") {
        const CostMatrix c = worked_matrix();
        const DeltaMatrix d = delta_matrix(sort_columns(c, permutation_matrix(c)));
        const std::vector<std::vector<std::int64_t>> expect = {
            {5, 3, 4, 6}, {2, 5, 1, 10}, {3, 2, 3, 1}, {1, 4, 2, 1}};
        for (int col = 0; col < 4; ++col) {
            for (int rank = 0; rank < 4; ++rank) {
                CHECK(d.at(rank, col) == expect[col][rank]);
            }
        }
    }

    TEST_CASE("constant column collapses to the minimum") {
        const DeltaMatrix d =
            delta_matrix(make_matrix(4, 1, {99, 99, 99, 99}));
        CHECK(d.at(0, 0) == 99);
        CHECK(d.at(1, 0) == 0);
        CHECK(d.at(2, 0) == 0);
        CHECK(d.at(3, 0) == 0);
    }

    TEST_CASE("prefix sums reproduce the sorted column") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 200; ++trial) {
            const CostMatrix c = random_matrix(rng);
            const CostMatrix sorted = sort_columns(c, permutation_matrix(c));
            const DeltaMatrix d = delta_matrix(sorted);
            for (int col = 0; col < c.cols(); ++col) {
                std::int64_t prefix = 0;
                for (int r = 0; r < c.rows(); ++r) {
                    prefix += d.at(r, col);
                    CHECK(prefix == sorted.at(r, col));
                }
            }
        }
    }

    TEST_CASE("rejects a decreasing column") {
        CHECK_THROWS_AS(delta_matrix(make_matrix(3, 1, {5, 4, 6})),
                        std::invalid_argument);
    }
}

TEST_SUITE("build_polynomial") {
    TEST_CASE("worked example reduces to eight monomials") {
        const PseudoBooleanPolynomial poly = build_polynomial(worked_matrix());
        CHECK(to_canonical_string(poly) ==
              "11 + 11*y3 + 3*y4 + 2*y1*y3 + 4*y2*y3 + 4*y1*y4 + 12*y1*y2*y3 + "
              "6*y1*y2*y4");
        CHECK(poly.terms().size() == 8);
        CHECK(poly.degree() == 3);
    }

    TEST_CASE("patch catalog") {
        CHECK(to_canonical_string(build_polynomial(patch_a())) == "396");
        CHECK(build_polynomial(patch_a()).degree() == 0);

        CHECK(to_canonical_string(build_polynomial(patch_b())) == "611");

        const PseudoBooleanPolynomial bt = build_polynomial(patch_b().transposed());
        CHECK(to_canonical_string(bt) == "76 + 260*y3 + 680*y3*y4");
        CHECK(bt.degree() == 2);

        const PseudoBooleanPolynomial pc = build_polynomial(patch_c());
        CHECK(to_canonical_string(pc) == "531 + 106*y1*y2*y3");
        CHECK(pc.degree() == 3);

        // The fourth catalog patch follows the printed construction:
        // column (17,123,123,123) sorts to differences (17,106,0,0), so
        // the variable product stops at y1.
        const PseudoBooleanPolynomial pd = build_polynomial(patch_d());
        CHECK(to_canonical_string(pd) == "531 + 106*y1");
        CHECK(pd.degree() == 1);
    }

    TEST_CASE("staged and combined construction agree") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const CostMatrix c = random_matrix(rng);
            const PermutationMatrix pi = permutation_matrix(c);
            const PseudoBooleanPolynomial staged =
                build_polynomial(delta_matrix(sort_columns(c, pi)), pi);
            CHECK(canonical_equal(staged, build_polynomial(c)));
        }
    }

    TEST_CASE("matrices with more than 64 rows use the same construction") {
        // Exercises the general aggregation path.
        const int m = 70;
        std::vector<std::int64_t> entries;
        for (int r = 0; r < m; ++r) {
            entries.push_back(r % 7);
            entries.push_back(3);
        }
        const CostMatrix c = make_matrix(m, 2, std::move(entries));
        const PseudoBooleanPolynomial poly = build_polynomial(c);
        std::mt19937 rng(19);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<bool> y(static_cast<std::size_t>(m));
            for (auto&& b : y) b = rng() & 1u;
            CHECK(poly.evaluate(y) == direct_cost(c, y));
        }
    }

    TEST_CASE("rejects mismatched delta and permutation") {
        const CostMatrix c = worked_matrix();
        const PermutationMatrix pi = permutation_matrix(c);
        const DeltaMatrix small = delta_matrix(make_matrix(2, 2, {1, 2, 3, 4}));
        CHECK_THROWS_AS(build_polynomial(small, pi), std::invalid_argument);
    }
}

TEST_SUITE("degree and classify") {
    TEST_CASE("degree of catalog polynomials") {
        CHECK(build_polynomial(patch_a()).degree() == 0);
        CHECK(build_polynomial(patch_b().transposed()).degree() == 2);
        CHECK(build_polynomial(worked_matrix()).degree() == 3);
    }

    TEST_CASE("empty polynomial has degree zero") {
        CHECK(PseudoBooleanPolynomial().degree() == 0);
        CHECK(build_polynomial(make_matrix(2, 2, {0, 0, 0, 0})).degree() == 0);
    }

    TEST_CASE("classifier is a strict threshold") {
        CHECK(classify(3, 2) == Region::Edge);
        CHECK(classify(0, 0) == Region::Blob);
        for (int p = 0; p <= 5; ++p) CHECK(classify(p, p) == Region::Blob);
    }
}

TEST_SUITE("evaluate") {
    TEST_CASE("corners of the worked example") {
        const PseudoBooleanPolynomial poly = build_polynomial(worked_matrix());
        CHECK(poly.evaluate({false, false, false, false}) == 11);
        CHECK(poly.evaluate({true, true, true, true}) == 53);
    }

    TEST_CASE("constant polynomial ignores the assignment") {
        const PseudoBooleanPolynomial poly = build_polynomial(patch_a());
        CHECK(poly.evaluate({false, true, false, true}) == 396);
    }

    TEST_CASE("rejects a wrong-length assignment") {
        const PseudoBooleanPolynomial poly = build_polynomial(worked_matrix());
        CHECK_THROWS_AS(poly.evaluate({true, false}), std::invalid_argument);
    }

    TEST_CASE("matches the direct column cost on random matrices") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 200; ++trial) {
            const CostMatrix c = random_matrix(rng);
            const PseudoBooleanPolynomial poly = build_polynomial(c);
            const int m = c.rows();
            for (unsigned bits = 0; bits < (1u << m); ++bits) {
                const std::vector<bool> y = assignment_from_bits(bits, m);
                CHECK(poly.evaluate(y) == direct_cost(c, y));
            }
        }
    }
}

TEST_SUITE("truncate") {
    TEST_CASE("keeps only low-degree terms") {
        const PseudoBooleanPolynomial poly = build_polynomial(worked_matrix());
        const PseudoBooleanPolynomial cut = truncate(poly, 1);
        CHECK(to_canonical_string(cut) == "11 + 11*y3 + 3*y4");
        // Rebuilding from the kept terms is a fixed point.
        CHECK(canonical_equal(
            cut, PseudoBooleanPolynomial(cut.source_rows(), cut.terms())));
    }

    TEST_CASE("no-op at or above the degree bound") {
        const PseudoBooleanPolynomial poly = build_polynomial(worked_matrix());
        CHECK(canonical_equal(truncate(poly, 3), poly));
        CHECK(canonical_equal(truncate(poly, 10), poly));
        const PseudoBooleanPolynomial constant = build_polynomial(patch_a());
        CHECK(canonical_equal(truncate(constant, 0), constant));
    }
}

TEST_SUITE("canonical form") {
    TEST_CASE("the two equivalence matrices reduce identically") {
        const PseudoBooleanPolynomial a = build_polynomial(equivalence_matrix_a());
        const PseudoBooleanPolynomial b = build_polynomial(equivalence_matrix_b());
        CHECK(to_canonical_string(a) == "550 + 3*y1 + 6*y1*y2 + 1*y1*y2*y4");
        CHECK(canonical_equal(a, b));
    }

    TEST_CASE("a polynomial equals itself") {
        const PseudoBooleanPolynomial poly = build_polynomial(worked_matrix());
        CHECK(canonical_equal(poly, poly));
    }

    TEST_CASE("variable identity matters") {
        const PseudoBooleanPolynomial a(4, {mono(550, {}), mono(3, {0})});
        const PseudoBooleanPolynomial b(4, {mono(550, {}), mono(3, {1})});
        CHECK_FALSE(canonical_equal(a, b));
    }

    TEST_CASE("construction aggregates and orders hand-built terms") {
        const PseudoBooleanPolynomial p(
            4, {mono(2, {0, 3}), mono(1, {2}), mono(5, {}), mono(4, {2}),
                mono(3, {1, 2})});
        CHECK(to_canonical_string(p) == "5 + 5*y3 + 3*y2*y3 + 2*y1*y4");
    }

    TEST_CASE("zero matrix serializes as 0") {
        CHECK(to_canonical_string(build_polynomial(make_matrix(2, 2, {0, 0, 0, 0}))) ==
              "0");
    }

    TEST_CASE("rejects invalid hand-built monomials") {
        CHECK_THROWS_AS(PseudoBooleanPolynomial(2, {mono(-1, {0})}),
                        std::invalid_argument);
        CHECK_THROWS_AS(PseudoBooleanPolynomial(2, {mono(1, {0, 0})}),
                        std::invalid_argument);
        CHECK_THROWS_AS(PseudoBooleanPolynomial(2, {mono(1, {0, 1})}),
                        std::invalid_argument);  // degree m-1 exceeded
        CHECK_THROWS_AS(PseudoBooleanPolynomial(2, {mono(1, {5})}),
                        std::invalid_argument);
    }
}

TEST_SUITE("structural properties") {
    TEST_CASE("column permutation leaves the reduced polynomial unchanged") {
        std::mt19937 rng(29);
        for (int trial = 0; trial < 100; ++trial) {
            const CostMatrix c = random_matrix(rng);
            std::vector<int> cols(static_cast<std::size_t>(c.cols()));
            std::iota(cols.begin(), cols.end(), 0);
            std::shuffle(cols.begin(), cols.end(), rng);
            std::vector<std::int64_t> entries;
            for (int r = 0; r < c.rows(); ++r) {
                for (int col : cols) entries.push_back(c.at(r, col));
            }
            const CostMatrix shuffled = make_matrix(c.rows(), c.cols(), entries);
            CHECK(canonical_equal(build_polynomial(c), build_polynomial(shuffled)));
        }
    }

    TEST_CASE("row permutation renames variables") {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            const CostMatrix c = random_matrix(rng);
            std::vector<std::uint16_t> sigma(static_cast<std::size_t>(c.rows()));
            std::iota(sigma.begin(), sigma.end(), 0);
            std::shuffle(sigma.begin(), sigma.end(), rng);
            // Row sigma[r] of the new matrix is row r of the old one, so
            // variable r renames to sigma[r].
            std::vector<std::int64_t> entries(
                static_cast<std::size_t>(c.rows()) * c.cols());
            for (int r = 0; r < c.rows(); ++r) {
                for (int col = 0; col < c.cols(); ++col) {
                    entries[static_cast<std::size_t>(sigma[static_cast<std::size_t>(r)]) *
                                c.cols() +
                            col] = c.at(r, col);
                }
            }
            const CostMatrix permuted = make_matrix(c.rows(), c.cols(), entries);

            const PseudoBooleanPolynomial base = build_polynomial(c);
            std::vector<Monomial> renamed;
            for (const Monomial& m : base.terms()) {
                Monomial t = m;
                for (auto& v : t.vars) v = sigma[v];
                std::sort(t.vars.begin(), t.vars.end());
                renamed.push_back(std::move(t));
            }
            const PseudoBooleanPolynomial expect(c.rows(), std::move(renamed));
            const PseudoBooleanPolynomial got = build_polynomial(permuted);
            CHECK(canonical_equal(expect, got));
            CHECK(got.degree() == base.degree());
        }
    }

    TEST_CASE("degree stays below the row count") {
        std::mt19937 rng(37);
        for (int trial = 0; trial < 200; ++trial) {
            const CostMatrix c = random_matrix(rng);
            const PseudoBooleanPolynomial poly = build_polynomial(c);
            CHECK(poly.degree() >= 0);
            CHECK(poly.degree() <= c.rows() - 1);
            CHECK(poly.terms().size() <=
                  static_cast<std::size_t>(c.rows()) * c.cols());
        }
    }

    TEST_CASE("shifting one column moves only the constant term") {
        std::mt19937 rng(41);
        for (int trial = 0; trial < 100; ++trial) {
            const CostMatrix c = random_matrix(rng);
            std::uniform_int_distribution<int> pick(0, c.cols() - 1);
            std::uniform_int_distribution<std::int64_t> shift(0, 50);
            const int col = pick(rng);
            const std::int64_t t = shift(rng);
            std::vector<std::int64_t> entries(c.data());
            for (int r = 0; r < c.rows(); ++r) {
                entries[static_cast<std::size_t>(r) * c.cols() + col] += t;
            }
            const CostMatrix shifted = make_matrix(c.rows(), c.cols(), entries);

            const PseudoBooleanPolynomial base = build_polynomial(c);
            const PseudoBooleanPolynomial moved = build_polynomial(shifted);
            CHECK(moved.constant_term() == base.constant_term() + t);
            std::vector<Monomial> expect = base.terms();
            // Adjust or insert the constant, then renormalize.
            bool found = false;
            for (Monomial& m : expect) {
                if (m.vars.empty()) {
                    m.coef += t;
                    found = true;
                }
            }
            if (!found && t > 0) expect.push_back(mono(t, {}));
            CHECK(canonical_equal(PseudoBooleanPolynomial(c.rows(), expect), moved));
        }
    }

    TEST_CASE("constant term is the sum of column minima") {
        std::mt19937 rng(43);
        for (int trial = 0; trial < 100; ++trial) {
            const CostMatrix c = random_matrix(rng);
            std::int64_t minima = 0;
            for (int col = 0; col < c.cols(); ++col) {
                std::int64_t best = c.at(0, col);
                for (int r = 1; r < c.rows(); ++r) best = std::min(best, c.at(r, col));
                minima += best;
            }
            CHECK(build_polynomial(c).constant_term() == minima);
        }
    }
}

TEST_SUITE("cost matrix") {
    TEST_CASE("rejects invalid shapes and entries") {
        CHECK_THROWS_AS(make_matrix(0, 1, {}), std::invalid_argument);
        CHECK_THROWS_AS(make_matrix(1, 2, {1}), std::invalid_argument);
        CHECK_THROWS_AS(make_matrix(1, 2, {1, -3}), std::invalid_argument);
        CHECK_THROWS_AS(make_matrix(2, 2, {1, 1, 1, std::int64_t{1} << 62}),
                        std::invalid_argument);
    }

    TEST_CASE("transpose flips indices") {
        const CostMatrix c = make_matrix(2, 3, {1, 2, 3, 4, 5, 6});
        const CostMatrix t = c.transposed();
        CHECK(t.rows() == 3);
        CHECK(t.cols() == 2);
        for (int r = 0; r < 2; ++r) {
            for (int col = 0; col < 3; ++col) CHECK(c.at(r, col) == t.at(col, r));
        }
    }
}
