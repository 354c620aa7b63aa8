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

#ifndef LGTDUAL_COMPLEX_H
#define LGTDUAL_COMPLEX_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtdual {

enum class LatticeKind { cycle, square_torus, triangular_torus };

std::string lattice_kind_name(LatticeKind kind);

/// A nonzero entry of an incidence table. `coeff` is already reduced mod N.
struct Incidence {
    std::size_t cell;
    int coeff;
};

/// Periodic cell complex with Z_N incidence.
///
/// Dual cells are never stored separately: the dual i-cell is identified with
/// the primal (d-i)-cell, so a dual chain is indexed by primal cells of the
/// complementary grade. The dual boundary is the transpose of the primal one,
/// which makes the intersection pairing satisfy #(dc, c*) = #(c, d*c*).
///
/// Square torus orientation (only visible for N > 2): the x-edge based at
/// (x, y) runs from (x+1, y) to (x, y), the y-edge runs from (x, y) to
/// (x, y+1), and plaquettes are oriented counterclockwise.
class CellComplex {
   public:
    static CellComplex build(LatticeKind kind, std::vector<std::size_t> extents, int modulus);

    LatticeKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    int modulus() const { return modulus_; }
    const std::vector<std::size_t> &extents() const { return extents_; }

    std::size_t cell_count(int grade) const;

    /// Cells of grade-1 in the boundary of `cell` (grade >= 1).
    std::span<const Incidence> faces(int grade, std::size_t cell) const;
    /// Cells of grade+1 whose boundary contains `cell` (grade <= d-1), with
    /// the same coefficients. This is the dual boundary read on primal indices.
    std::span<const Incidence> cofaces(int grade, std::size_t cell) const;

    /// Vertex index of lattice coordinates (periodic).
    std::size_t vertex_at(std::ptrdiff_t x, std::ptrdiff_t y = 0) const;

    /// Edge opposite to `vertex` in a triangle (triangular torus only).
    std::size_t opposite_edge(std::size_t triangle, std::size_t vertex) const;
    /// The three corners of a triangle (triangular torus only).
    std::vector<std::size_t> triangle_corners(std::size_t triangle) const;

    std::string describe() const;

   private:
    LatticeKind kind_ = LatticeKind::cycle;
    int dimension_ = 1;
    int modulus_ = 2;
    std::vector<std::size_t> extents_;
    std::vector<std::size_t> counts_;
    // faces_[g][cell] for g in 1..d, cofaces_[g][cell] for g in 0..d-1.
    std::vector<std::vector<std::vector<Incidence>>> faces_;
    std::vector<std::vector<std::vector<Incidence>>> cofaces_;

    void add_face(int grade, std::size_t cell, std::size_t face, int sign);
    void finish();
};

/// Formal Z_N combination of cells of one grade.
///
/// A dual chain of dual grade j is stored against primal cells of grade d-j.
class Chain {
   public:
    Chain() = default;
    Chain(int grade, std::size_t size, int modulus, bool dual = false);

    static Chain zero(const CellComplex &cx, int grade, bool dual = false);
    static Chain cell(const CellComplex &cx, int grade, std::size_t index, int coeff = 1, bool dual = false);
    static Chain from_coefficients(const CellComplex &cx, int grade, std::vector<int> coeffs, bool dual = false);

    int grade() const { return grade_; }
    bool is_dual() const { return dual_; }
    int modulus() const { return modulus_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<int> &coefficients() const { return coeffs_; }

    int operator[](std::size_t k) const { return coeffs_[k]; }
    void set(std::size_t k, int value);
    void add(std::size_t k, int value);

    bool is_zero() const;
    /// Sum of all coefficients mod N.
    int total() const;
    std::size_t weight() const;

    Chain &operator+=(const Chain &other);
    Chain &operator-=(const Chain &other);
    Chain operator+(const Chain &other) const;
    Chain operator-(const Chain &other) const;
    Chain operator-() const;
    Chain scaled(int factor) const;

    bool operator==(const Chain &other) const = default;

    std::string str() const;

   private:
    int grade_ = 0;
    bool dual_ = false;
    int modulus_ = 2;
    std::vector<int> coeffs_;

    void check_compatible(const Chain &other) const;
};

/// Primal cells of a chain's underlying storage grade.
int storage_grade(const CellComplex &cx, const Chain &c);

/// Boundary. Primal chains go from grade i to i-1 through the faces; dual
/// chains go from dual grade j to j-1 through the cofaces.
Chain boundary(const CellComplex &cx, const Chain &c);

/// Dual boundary written on primal indices: a primal chain of grade i maps to
/// a primal chain of grade i+1 (e.g. a vertex to its incident edges).
Chain coboundary(const CellComplex &cx, const Chain &c);

/// Intersection pairing of a primal i-chain with a dual (d-i)-chain.
int intersection(const CellComplex &cx, const Chain &c, const Chain &cstar);

enum class PairingPolicy { canonical, alternate };

std::string pairing_policy_name(PairingPolicy policy);

/// Raised when a vertex charge cannot be paired away.
class IsolatedMonopole : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A 1-chain rho with boundary(rho) == s.
///
/// `canonical` reduces charges greedily: the lowest-index charged vertex is
/// moved along a BFS shortest path (neighbors visited in increasing edge
/// order) onto the nearest other charged vertex, ties going to the lowest
/// index, until nothing is left. `alternate` adds the non-contractible loop of
/// `noncontractible_loop` on top of the canonical chain.
Chain pair_outcomes(const CellComplex &cx, const Chain &s, PairingPolicy policy = PairingPolicy::canonical);

/// A closed 1-chain winding once around the first lattice direction.
Chain noncontractible_loop(const CellComplex &cx);

}  // namespace lgtdual

#endif
