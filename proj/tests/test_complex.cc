// Copyright 2026 The lgtdual Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lgtdual/complex.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

using namespace lgtdual;

namespace {

Chain chain_from_bits(const CellComplex &cx, int grade, unsigned bits, bool dual = false) {
    Chain c = Chain::zero(cx, grade, dual);
    for (std::size_t k = 0; k < c.size(); k++) {
        c.set(k, (bits >> k) & 1);
    }
    return c;
}

Chain random_chain(const CellComplex &cx, int grade, bool dual, std::mt19937_64 &rng) {
    Chain c = Chain::zero(cx, grade, dual);
    std::uniform_int_distribution<int> d(0, cx.modulus() - 1);
    for (std::size_t k = 0; k < c.size(); k++) {
        c.set(k, d(rng));
    }
    return c;
}

// Lattice distance on a periodic grid, written without the complex.
std::size_t torus_distance(std::size_t a, std::size_t b, std::size_t Lx, std::size_t Ly) {
    auto d = [](std::size_t p, std::size_t q, std::size_t L) {
        std::size_t r = p > q ? p - q : q - p;
        return std::min(r, L - r);
    };
    return d(a % Lx, b % Lx, Lx) + d(a / Lx, b / Lx, Ly);
}

}  // namespace

TEST(complex, cycle_counts_and_edge_boundary) {
    auto cx = CellComplex::build(LatticeKind::cycle, {4}, 2);
    EXPECT_EQ(cx.dimension(), 1);
    EXPECT_EQ(cx.cell_count(0), 4u);
    EXPECT_EQ(cx.cell_count(1), 4u);
    auto b = boundary(cx, Chain::cell(cx, 1, 0));
    EXPECT_EQ(b.coefficients(), (std::vector<int>{1, 1, 0, 0}));
}

TEST(complex, cycle_edge_boundary_l3) {
    auto cx = CellComplex::build(LatticeKind::cycle, {3}, 2);
    EXPECT_EQ(boundary(cx, Chain::cell(cx, 1, 1)).coefficients(), (std::vector<int>{0, 1, 1}));
    EXPECT_EQ(boundary(cx, Chain::cell(cx, 1, 2)).coefficients(), (std::vector<int>{1, 0, 1}));
}

TEST(complex, square_counts_and_nilpotency) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 2);
    EXPECT_EQ(cx.cell_count(0), 4u);
    EXPECT_EQ(cx.cell_count(1), 8u);
    EXPECT_EQ(cx.cell_count(2), 4u);
    for (std::size_t p = 0; p < 4; p++) {
        EXPECT_TRUE(boundary(cx, boundary(cx, Chain::cell(cx, 2, p))).is_zero());
    }
}

TEST(complex, triangular_counts) {
    auto cx = CellComplex::build(LatticeKind::triangular_torus, {2, 2}, 2);
    EXPECT_EQ(cx.cell_count(0), 4u);
    EXPECT_EQ(cx.cell_count(1), 12u);
    EXPECT_EQ(cx.cell_count(2), 8u);
    auto big = CellComplex::build(LatticeKind::triangular_torus, {3, 3}, 2);
    for (std::size_t v = 0; v < 9; v++) {
        EXPECT_EQ(big.cofaces(0, v).size(), 6u);
    }
    for (std::size_t t = 0; t < big.cell_count(2); t++) {
        EXPECT_EQ(big.faces(2, t).size(), 3u);
        for (auto v : big.triangle_corners(t)) {
            auto e = big.opposite_edge(t, v);
            for (const auto &end : big.faces(1, e)) {
                EXPECT_NE(end.cell, v);
            }
        }
    }
}

TEST(complex, dual_plaquette_signs_mod3) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 3);
    for (std::size_t v = 0; v < 4; v++) {
        std::vector<int> coeffs;
        for (const auto &inc : cx.cofaces(0, v)) {
            coeffs.push_back(inc.coeff);
        }
        std::sort(coeffs.begin(), coeffs.end());
        EXPECT_EQ(coeffs, (std::vector<int>{1, 1, 2, 2}));
    }
    auto big = CellComplex::build(LatticeKind::square_torus, {3, 4}, 5);
    for (std::size_t v = 0; v < big.cell_count(0); v++) {
        std::vector<int> coeffs;
        for (const auto &inc : big.cofaces(0, v)) {
            coeffs.push_back(inc.coeff);
        }
        std::sort(coeffs.begin(), coeffs.end());
        EXPECT_EQ(coeffs, (std::vector<int>{1, 1, 4, 4}));
    }
}

TEST(complex, nilpotent_every_kind_and_grade) {
    std::vector<CellComplex> all = {
        CellComplex::build(LatticeKind::cycle, {5}, 3),
        CellComplex::build(LatticeKind::square_torus, {2, 2}, 2),
        CellComplex::build(LatticeKind::square_torus, {3, 2}, 3),
        CellComplex::build(LatticeKind::square_torus, {3, 3}, 4),
        CellComplex::build(LatticeKind::triangular_torus, {2, 3}, 2),
    };
    for (const auto &cx : all) {
        int d = cx.dimension();
        for (int g = 2; g <= d; g++) {
            for (std::size_t k = 0; k < cx.cell_count(g); k++) {
                EXPECT_TRUE(boundary(cx, boundary(cx, Chain::cell(cx, g, k))).is_zero()) << cx.describe();
            }
        }
        for (int j = 2; j <= d; j++) {
            for (std::size_t k = 0; k < cx.cell_count(d - j); k++) {
                Chain c = Chain::cell(cx, j, k, 1, true);
                EXPECT_TRUE(boundary(cx, boundary(cx, c)).is_zero()) << cx.describe();
            }
        }
    }
}

TEST(complex, dual_boundary_of_star_is_closed) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 2);
    Chain star = boundary(cx, Chain::cell(cx, 2, 0, 1, true));
    EXPECT_EQ(star.weight(), 4u);
    EXPECT_TRUE(boundary(cx, star).is_zero());
    EXPECT_EQ(coboundary(cx, Chain::cell(cx, 0, 0)), Chain::from_coefficients(cx, 1, star.coefficients()));
}

TEST(complex, grade_errors) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 2);
    EXPECT_THROW(boundary(cx, Chain::cell(cx, 0, 0)), std::out_of_range);
    EXPECT_THROW(coboundary(cx, Chain::cell(cx, 2, 0)), std::out_of_range);
    EXPECT_THROW(CellComplex::build(LatticeKind::cycle, {1}, 2), std::invalid_argument);
    EXPECT_THROW(CellComplex::build(LatticeKind::square_torus, {2, 1}, 2), std::invalid_argument);
    EXPECT_THROW(CellComplex::build(LatticeKind::triangular_torus, {2, 2}, 3), std::invalid_argument);
    EXPECT_THROW(CellComplex::build(LatticeKind::cycle, {4}, 1), std::invalid_argument);
}

TEST(complex, chain_reduction) {
    auto cx = CellComplex::build(LatticeKind::cycle, {3}, 3);
    Chain c = Chain::from_coefficients(cx, 0, {4, -1, 3});
    EXPECT_EQ(c.coefficients(), (std::vector<int>{1, 2, 0}));
    EXPECT_EQ((c + c).coefficients(), (std::vector<int>{2, 1, 0}));
    EXPECT_EQ((-c).coefficients(), (std::vector<int>{2, 1, 0}));
    EXPECT_EQ(c.total(), 0);
}

TEST(complex, intersection_spot_values) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 2);
    EXPECT_EQ(intersection(cx, Chain::cell(cx, 1, 3), Chain::cell(cx, 1, 3, 1, true)), 1);
    EXPECT_EQ(intersection(cx, Chain::cell(cx, 1, 3), Chain::cell(cx, 1, 4, 1, true)), 0);
    EXPECT_THROW(intersection(cx, Chain::cell(cx, 1, 3), Chain::cell(cx, 2, 0, 1, true)), std::invalid_argument);
    EXPECT_THROW(intersection(cx, Chain::cell(cx, 1, 3), Chain::cell(cx, 1, 3)), std::invalid_argument);
    // One plaquette against one of its dual edges, both sides of the relation.
    Chain p = Chain::cell(cx, 2, 0);
    std::size_t e = cx.faces(2, 0)[0].cell;
    Chain estar = Chain::cell(cx, 1, e, 1, true);
    EXPECT_EQ(intersection(cx, boundary(cx, p), estar), 1);
    EXPECT_EQ(intersection(cx, p, boundary(cx, estar)), 1);
}

TEST(complex, duality_relation_exhaustive_z2) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 2);
    // i = 0: edges against dual plaquettes (stored on vertices).
    for (unsigned a = 0; a < 256; a++) {
        Chain c1 = chain_from_bits(cx, 1, a);
        Chain dc = boundary(cx, c1);
        for (unsigned b = 0; b < 16; b++) {
            Chain s2 = chain_from_bits(cx, 2, b, true);
            ASSERT_EQ(intersection(cx, dc, s2), intersection(cx, c1, boundary(cx, s2)));
        }
    }
    // i = 1: plaquettes against dual edges.
    for (unsigned a = 0; a < 16; a++) {
        Chain c2 = chain_from_bits(cx, 2, a);
        Chain dc = boundary(cx, c2);
        for (unsigned b = 0; b < 256; b++) {
            Chain s1 = chain_from_bits(cx, 1, b, true);
            ASSERT_EQ(intersection(cx, dc, s1), intersection(cx, c2, boundary(cx, s1)));
        }
    }
}

TEST(complex, duality_relation_random_z3) {
    std::mt19937_64 rng(7);
    std::vector<CellComplex> all = {
        CellComplex::build(LatticeKind::square_torus, {2, 2}, 3),
        CellComplex::build(LatticeKind::square_torus, {3, 3}, 3),
        CellComplex::build(LatticeKind::cycle, {5}, 3),
    };
    for (const auto &cx : all) {
        int d = cx.dimension();
        for (int trial = 0; trial < 10000; trial++) {
            int i = static_cast<int>(rng() % static_cast<unsigned>(d));
            Chain c = random_chain(cx, i + 1, false, rng);
            Chain s = random_chain(cx, d - i, true, rng);
            ASSERT_EQ(intersection(cx, boundary(cx, c), s), intersection(cx, c, boundary(cx, s)));
        }
    }
}

TEST(complex, pair_outcomes_trivial_and_monopole) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {2, 2}, 2);
    EXPECT_TRUE(pair_outcomes(cx, Chain::zero(cx, 0)).is_zero());
    EXPECT_THROW(pair_outcomes(cx, Chain::cell(cx, 0, 2)), IsolatedMonopole);
    auto c3 = CellComplex::build(LatticeKind::square_torus, {2, 2}, 3);
    EXPECT_THROW(pair_outcomes(c3, Chain::cell(c3, 0, 1, 1)), IsolatedMonopole);
}

TEST(complex, pair_outcomes_adjacent_pair_is_single_edge) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {3, 3}, 2);
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        Chain s = boundary(cx, Chain::cell(cx, 1, e));
        Chain rho = pair_outcomes(cx, s);
        EXPECT_EQ(rho.weight(), 1u);
        EXPECT_EQ(boundary(cx, rho), s);
    }
}

TEST(complex, pair_outcomes_exhaustive_z2) {
    for (auto L : {std::size_t{2}, std::size_t{3}}) {
        auto cx = CellComplex::build(LatticeKind::square_torus, {L, L}, 2);
        std::size_t nv = cx.cell_count(0);
        for (unsigned bits = 0; bits < (1u << nv); bits++) {
            Chain s = chain_from_bits(cx, 0, bits);
            if (s.total() != 0) {
                EXPECT_THROW(pair_outcomes(cx, s), IsolatedMonopole);
                continue;
            }
            Chain rho = pair_outcomes(cx, s);
            ASSERT_EQ(boundary(cx, rho), s);
            if (s.weight() == 2) {
                std::vector<std::size_t> ends;
                for (std::size_t v = 0; v < nv; v++) {
                    if (s[v]) {
                        ends.push_back(v);
                    }
                }
                EXPECT_EQ(rho.weight(), torus_distance(ends[0], ends[1], L, L));
            }
            Chain alt = pair_outcomes(cx, s, PairingPolicy::alternate);
            EXPECT_EQ(boundary(cx, alt), s);
            EXPECT_NE(alt, rho);
            EXPECT_TRUE(boundary(cx, rho - alt).is_zero());
        }
    }
}

TEST(complex, pair_outcomes_random_z3_and_cycle) {
    std::mt19937_64 rng(11);
    std::vector<CellComplex> all = {
        CellComplex::build(LatticeKind::square_torus, {2, 2}, 3),
        CellComplex::build(LatticeKind::square_torus, {3, 4}, 3),
        CellComplex::build(LatticeKind::cycle, {6}, 3),
        CellComplex::build(LatticeKind::cycle, {4}, 2),
        CellComplex::build(LatticeKind::triangular_torus, {3, 2}, 2),
    };
    for (const auto &cx : all) {
        for (int trial = 0; trial < 1000; trial++) {
            Chain s = random_chain(cx, 0, false, rng);
            s.add(0, -s.total());
            Chain rho = pair_outcomes(cx, s);
            ASSERT_EQ(boundary(cx, rho), s) << cx.describe();
            Chain alt = pair_outcomes(cx, s, PairingPolicy::alternate);
            ASSERT_EQ(boundary(cx, alt), s);
        }
    }
}

TEST(complex, pair_outcomes_deterministic) {
    auto cx = CellComplex::build(LatticeKind::square_torus, {3, 3}, 2);
    Chain s = Chain::from_coefficients(cx, 0, {1, 0, 0, 0, 1, 0, 0, 0, 0});
    Chain rho = pair_outcomes(cx, s);
    EXPECT_EQ(rho, pair_outcomes(cx, s));
    EXPECT_EQ(rho.weight(), 2u);
}

TEST(complex, noncontractible_loop_is_closed_and_nontrivial) {
    for (int N : {2, 3, 5}) {
        auto cx = CellComplex::build(LatticeKind::square_torus, {3, 2}, N);
        Chain loop = noncontractible_loop(cx);
        EXPECT_TRUE(boundary(cx, loop).is_zero());
        // Pairs to 1 with the dual loop winding the other way (the y-edges at x = 0).
        Chain cross = Chain::zero(cx, 1, true);
        cross.set(0, 1);
        cross.set(cx.vertex_at(0, 1), 1);
        EXPECT_NE(intersection(cx, loop, cross), 0);
    }
}
