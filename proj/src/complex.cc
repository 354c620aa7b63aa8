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
#include <sstream>

namespace lgtdual {

namespace {

int mod(long long a, int n) {
    long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

std::string lattice_kind_name(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::cycle:
            return "cycle";
        case LatticeKind::square_torus:
            return "square";
        case LatticeKind::triangular_torus:
            return "triangular";
    }
    return "?";
}

void CellComplex::add_face(int grade, std::size_t cell, std::size_t face, int sign) {
    auto &list = faces_[grade][cell];
    for (auto &inc : list) {
        if (inc.cell == face) {
            inc.coeff = mod(inc.coeff + sign, modulus_);
            return;
        }
    }
    list.push_back({face, mod(sign, modulus_)});
}

void CellComplex::finish() {
    for (int g = 1; g <= dimension_; g++) {
        for (auto &list : faces_[g]) {
            std::erase_if(list, [](const Incidence &inc) { return inc.coeff == 0; });
            std::sort(list.begin(), list.end(), [](const Incidence &a, const Incidence &b) {
                return a.cell < b.cell;
            });
        }
    }
    cofaces_.assign(dimension_ + 1, {});
    for (int g = 0; g < dimension_; g++) {
        cofaces_[g].assign(counts_[g], {});
        for (std::size_t c = 0; c < counts_[g + 1]; c++) {
            for (const auto &inc : faces_[g + 1][c]) {
                cofaces_[g][inc.cell].push_back({c, inc.coeff});
            }
        }
    }
}

CellComplex CellComplex::build(LatticeKind kind, std::vector<std::size_t> extents, int modulus) {
    if (modulus < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    std::size_t want_axes = kind == LatticeKind::cycle ? 1 : 2;
    if (extents.size() != want_axes) {
        throw std::invalid_argument(
            lattice_kind_name(kind) + " lattice needs " + std::to_string(want_axes) + " extent(s)");
    }
    for (auto e : extents) {
        if (e < 2) {
            throw std::invalid_argument("every lattice extent must be at least 2");
        }
    }
    if (kind == LatticeKind::triangular_torus && modulus != 2) {
        throw std::invalid_argument("the triangular torus is only supported for N = 2");
    }

    CellComplex cx;
    cx.kind_ = kind;
    cx.modulus_ = modulus;
    cx.extents_ = extents;

    if (kind == LatticeKind::cycle) {
        std::size_t L = extents[0];
        cx.dimension_ = 1;
        cx.counts_ = {L, L};
        cx.faces_.assign(2, {});
        cx.faces_[1].assign(L, {});
        for (std::size_t i = 0; i < L; i++) {
            cx.add_face(1, i, i, -1);
            cx.add_face(1, i, (i + 1) % L, +1);
        }
        cx.finish();
        return cx;
    }

    std::size_t Lx = extents[0];
    std::size_t Ly = extents[1];
    std::size_t n = Lx * Ly;
    auto v = [&](std::size_t x, std::size_t y) { return (x % Lx) + Lx * (y % Ly); };
    auto ex = [&](std::size_t x, std::size_t y) { return v(x, y); };
    auto ey = [&](std::size_t x, std::size_t y) { return n + v(x, y); };
    auto ed = [&](std::size_t x, std::size_t y) { return 2 * n + v(x, y); };

    cx.dimension_ = 2;
    bool tri = kind == LatticeKind::triangular_torus;
    cx.counts_ = {n, tri ? 3 * n : 2 * n, tri ? 2 * n : n};
    cx.faces_.assign(3, {});
    cx.faces_[1].assign(cx.counts_[1], {});
    cx.faces_[2].assign(cx.counts_[2], {});

    for (std::size_t y = 0; y < Ly; y++) {
        for (std::size_t x = 0; x < Lx; x++) {
            cx.add_face(1, ex(x, y), v(x, y), +1);
            cx.add_face(1, ex(x, y), v(x + 1, y), -1);
            cx.add_face(1, ey(x, y), v(x, y + 1), +1);
            cx.add_face(1, ey(x, y), v(x, y), -1);
            if (tri) {
                cx.add_face(1, ed(x, y), v(x + 1, y + 1), +1);
                cx.add_face(1, ed(x, y), v(x, y), -1);
            }
        }
    }
    for (std::size_t y = 0; y < Ly; y++) {
        for (std::size_t x = 0; x < Lx; x++) {
            if (!tri) {
                std::size_t p = v(x, y);
                cx.add_face(2, p, ex(x, y), -1);
                cx.add_face(2, p, ey(x + 1, y), +1);
                cx.add_face(2, p, ex(x, y + 1), +1);
                cx.add_face(2, p, ey(x, y), -1);
            } else {
                // Signs are irrelevant at N = 2.
                std::size_t lower = 2 * v(x, y);
                cx.add_face(2, lower, ex(x, y), 1);
                cx.add_face(2, lower, ey(x + 1, y), 1);
                cx.add_face(2, lower, ed(x, y), 1);
                std::size_t upper = lower + 1;
                cx.add_face(2, upper, ed(x, y), 1);
                cx.add_face(2, upper, ex(x, y + 1), 1);
                cx.add_face(2, upper, ey(x, y), 1);
            }
        }
    }
    cx.finish();
    return cx;
}

std::size_t CellComplex::cell_count(int grade) const {
    if (grade < 0 || grade > dimension_) {
        throw std::out_of_range("grade " + std::to_string(grade) + " outside complex");
    }
    return counts_[grade];
}

std::span<const Incidence> CellComplex::faces(int grade, std::size_t cell) const {
    if (grade < 1 || grade > dimension_) {
        throw std::out_of_range("faces: grade out of range");
    }
    if (cell >= counts_[grade]) {
        throw std::out_of_range("faces: cell index out of range");
    }
    return faces_[grade][cell];
}

std::span<const Incidence> CellComplex::cofaces(int grade, std::size_t cell) const {
    if (grade < 0 || grade >= dimension_) {
        throw std::out_of_range("cofaces: grade out of range");
    }
    if (cell >= counts_[grade]) {
        throw std::out_of_range("cofaces: cell index out of range");
    }
    return cofaces_[grade][cell];
}

std::size_t CellComplex::vertex_at(std::ptrdiff_t x, std::ptrdiff_t y) const {
    auto wrap = [](std::ptrdiff_t a, std::size_t L) {
        auto l = static_cast<std::ptrdiff_t>(L);
        return static_cast<std::size_t>(((a % l) + l) % l);
    };
    if (dimension_ == 1) {
        return wrap(x, extents_[0]);
    }
    return wrap(x, extents_[0]) + extents_[0] * wrap(y, extents_[1]);
}

std::vector<std::size_t> CellComplex::triangle_corners(std::size_t triangle) const {
    if (kind_ != LatticeKind::triangular_torus) {
        throw std::logic_error("triangle_corners needs a triangular torus");
    }
    if (triangle >= counts_[2]) {
        throw std::out_of_range("triangle index out of range");
    }
    std::size_t base = triangle / 2;
    auto x = static_cast<std::ptrdiff_t>(base % extents_[0]);
    auto y = static_cast<std::ptrdiff_t>(base / extents_[0]);
    if (triangle % 2 == 0) {
        return {vertex_at(x, y), vertex_at(x + 1, y), vertex_at(x + 1, y + 1)};
    }
    return {vertex_at(x, y), vertex_at(x + 1, y + 1), vertex_at(x, y + 1)};
}

std::size_t CellComplex::opposite_edge(std::size_t triangle, std::size_t vertex) const {
    auto corners = triangle_corners(triangle);
    auto it = std::find(corners.begin(), corners.end(), vertex);
    if (it == corners.end()) {
        throw std::invalid_argument("vertex is not a corner of the triangle");
    }
    // The opposite edge is the face not touching the vertex.
    for (const auto &inc : faces(2, triangle)) {
        bool touches = false;
        for (const auto &end : faces(1, inc.cell)) {
            touches |= end.cell == vertex;
        }
        if (!touches) {
            return inc.cell;
        }
    }
    throw std::logic_error("triangle has no edge opposite to the vertex");
}

std::string CellComplex::describe() const {
    std::ostringstream out;
    out << lattice_kind_name(kind_) << ":";
    for (std::size_t k = 0; k < extents_.size(); k++) {
        out << (k ? "x" : "") << extents_[k];
    }
    out << " N=" << modulus_;
    return out.str();
}

Chain::Chain(int grade, std::size_t size, int modulus, bool dual)
    : grade_(grade), dual_(dual), modulus_(modulus), coeffs_(size, 0) {
    if (modulus < 2) {
        throw std::invalid_argument("chain modulus must be at least 2");
    }
}

int storage_grade(const CellComplex &cx, const Chain &c) {
    return c.is_dual() ? cx.dimension() - c.grade() : c.grade();
}

Chain Chain::zero(const CellComplex &cx, int grade, bool dual) {
    int stored = dual ? cx.dimension() - grade : grade;
    return Chain(grade, cx.cell_count(stored), cx.modulus(), dual);
}

Chain Chain::cell(const CellComplex &cx, int grade, std::size_t index, int coeff, bool dual) {
    Chain c = zero(cx, grade, dual);
    if (index >= c.size()) {
        throw std::out_of_range("chain cell index out of range");
    }
    c.set(index, coeff);
    return c;
}

Chain Chain::from_coefficients(const CellComplex &cx, int grade, std::vector<int> coeffs, bool dual) {
    Chain c = zero(cx, grade, dual);
    if (coeffs.size() != c.size()) {
        throw std::invalid_argument("coefficient vector does not match the cell count");
    }
    for (std::size_t k = 0; k < coeffs.size(); k++) {
        c.set(k, coeffs[k]);
    }
    return c;
}

void Chain::set(std::size_t k, int value) {
    coeffs_.at(k) = mod(value, modulus_);
}

void Chain::add(std::size_t k, int value) {
    coeffs_.at(k) = mod(static_cast<long long>(coeffs_.at(k)) + value, modulus_);
}

bool Chain::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int a) { return a == 0; });
}

int Chain::total() const {
    long long s = 0;
    for (int a : coeffs_) {
        s += a;
    }
    return mod(s, modulus_);
}

std::size_t Chain::weight() const {
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](int a) { return a != 0; }));
}

void Chain::check_compatible(const Chain &other) const {
    if (grade_ != other.grade_ || dual_ != other.dual_ || modulus_ != other.modulus_ ||
        coeffs_.size() != other.coeffs_.size()) {
        throw std::invalid_argument("chains live in different groups");
    }
}

Chain &Chain::operator+=(const Chain &other) {
    check_compatible(other);
    for (std::size_t k = 0; k < coeffs_.size(); k++) {
        coeffs_[k] = mod(coeffs_[k] + other.coeffs_[k], modulus_);
    }
    return *this;
}

Chain &Chain::operator-=(const Chain &other) {
    check_compatible(other);
    for (std::size_t k = 0; k < coeffs_.size(); k++) {
        coeffs_[k] = mod(coeffs_[k] - other.coeffs_[k], modulus_);
    }
    return *this;
}

Chain Chain::operator+(const Chain &other) const {
    Chain r = *this;
    r += other;
    return r;
}

Chain Chain::operator-(const Chain &other) const {
    Chain r = *this;
    r -= other;
    return r;
}

Chain Chain::operator-() const {
    return scaled(-1);
}

Chain Chain::scaled(int factor) const {
    Chain r = *this;
    for (auto &a : r.coeffs_) {
        a = mod(static_cast<long long>(a) * factor, modulus_);
    }
    return r;
}

std::string Chain::str() const {
    std::ostringstream out;
    out << (dual_ ? "dual " : "") << grade_ << "-chain[";
    for (std::size_t k = 0; k < coeffs_.size(); k++) {
        out << (k ? " " : "") << coeffs_[k];
    }
    out << "]";
    return out.str();
}

namespace {

void check_chain(const CellComplex &cx, const Chain &c) {
    if (c.modulus() != cx.modulus()) {
        throw std::invalid_argument("chain modulus differs from the complex");
    }
    int g = storage_grade(cx, c);
    if (c.grade() < 0 || c.grade() > cx.dimension() || c.size() != cx.cell_count(g)) {
        throw std::invalid_argument("chain does not address this complex");
    }
}

Chain primal_down(const CellComplex &cx, const Chain &c, int stored) {
    Chain out(stored - 1, cx.cell_count(stored - 1), cx.modulus());
    for (std::size_t k = 0; k < c.size(); k++) {
        if (c[k] == 0) {
            continue;
        }
        for (const auto &inc : cx.faces(stored, k)) {
            out.add(inc.cell, c[k] * inc.coeff);
        }
    }
    return out;
}

Chain primal_up(const CellComplex &cx, const Chain &c, int stored) {
    Chain out(stored + 1, cx.cell_count(stored + 1), cx.modulus());
    for (std::size_t k = 0; k < c.size(); k++) {
        if (c[k] == 0) {
            continue;
        }
        for (const auto &inc : cx.cofaces(stored, k)) {
            out.add(inc.cell, c[k] * inc.coeff);
        }
    }
    return out;
}

}  // namespace

Chain boundary(const CellComplex &cx, const Chain &c) {
    check_chain(cx, c);
    if (c.grade() < 1) {
        throw std::out_of_range("boundary of a 0-chain is undefined");
    }
    int stored = storage_grade(cx, c);
    if (!c.is_dual()) {
        return primal_down(cx, c, stored);
    }
    Chain up = primal_up(cx, c, stored);
    Chain out(c.grade() - 1, up.size(), cx.modulus(), true);
    for (std::size_t k = 0; k < up.size(); k++) {
        out.set(k, up[k]);
    }
    return out;
}

Chain coboundary(const CellComplex &cx, const Chain &c) {
    check_chain(cx, c);
    if (c.is_dual()) {
        throw std::invalid_argument("coboundary takes a primal chain; use boundary on dual chains");
    }
    if (c.grade() >= cx.dimension()) {
        throw std::out_of_range("coboundary of a top-grade chain is undefined");
    }
    return primal_up(cx, c, c.grade());
}

int intersection(const CellComplex &cx, const Chain &c, const Chain &cstar) {
    check_chain(cx, c);
    check_chain(cx, cstar);
    if (c.is_dual() || !cstar.is_dual()) {
        throw std::invalid_argument("intersection pairs a primal chain with a dual chain");
    }
    if (c.grade() + cstar.grade() != cx.dimension()) {
        throw std::invalid_argument("intersection needs complementary grades");
    }
    long long s = 0;
    for (std::size_t k = 0; k < c.size(); k++) {
        s += static_cast<long long>(c[k]) * cstar[k];
    }
    return mod(s, cx.modulus());
}

std::string pairing_policy_name(PairingPolicy policy) {
    return policy == PairingPolicy::canonical ? "canonical" : "alternate";
}

Chain noncontractible_loop(const CellComplex &cx) {
    Chain loop = Chain::zero(cx, 1);
    if (cx.dimension() == 1) {
        for (std::size_t k = 0; k < loop.size(); k++) {
            loop.set(k, 1);
        }
        return loop;
    }
    // x-edges of the row y = 0; their boundaries telescope around the circle.
    for (std::size_t x = 0; x < cx.extents()[0]; x++) {
        loop.set(x, 1);
    }
    return loop;
}

Chain pair_outcomes(const CellComplex &cx, const Chain &s, PairingPolicy policy) {
    check_chain(cx, s);
    if (s.grade() != 0 || s.is_dual()) {
        throw std::invalid_argument("pair_outcomes takes a primal 0-chain");
    }
    if (s.total() != 0) {
        throw IsolatedMonopole("outcome chain has nonzero total charge " + std::to_string(s.total()));
    }
    const std::size_t nv = cx.cell_count(0);
    Chain rho = Chain::zero(cx, 1);
    Chain residual = s;

    std::vector<std::ptrdiff_t> parent_edge(nv);
    std::vector<std::size_t> parent_vertex(nv);
    std::vector<int> dist(nv);
    while (true) {
        std::size_t a = 0;
        while (a < nv && residual[a] == 0) {
            a++;
        }
        if (a == nv) {
            break;
        }
        // Breadth-first search, one layer at a time.
        std::fill(dist.begin(), dist.end(), -1);
        dist[a] = 0;
        std::vector<std::size_t> layer{a};
        std::ptrdiff_t target = -1;
        while (!layer.empty() && target < 0) {
            std::vector<std::size_t> next;
            for (std::size_t u : layer) {
                for (const auto &inc : cx.cofaces(0, u)) {
                    for (const auto &end : cx.faces(1, inc.cell)) {
                        std::size_t w = end.cell;
                        if (dist[w] >= 0) {
                            continue;
                        }
                        dist[w] = dist[u] + 1;
                        parent_edge[w] = static_cast<std::ptrdiff_t>(inc.cell);
                        parent_vertex[w] = u;
                        next.push_back(w);
                    }
                }
            }
            for (std::size_t w : next) {
                if (residual[w] != 0 && (target < 0 || w < static_cast<std::size_t>(target))) {
                    target = static_cast<std::ptrdiff_t>(w);
                }
            }
            layer = std::move(next);
        }
        if (target < 0) {
            throw std::logic_error("charged vertex without a partner despite neutrality");
        }
        // Path from a to target with boundary a - target, scaled by the charge at a.
        int q = residual[a];
        std::size_t w = static_cast<std::size_t>(target);
        while (w != a) {
            std::size_t e = static_cast<std::size_t>(parent_edge[w]);
            std::size_t u = parent_vertex[w];
            int coeff_u = 0;
            for (const auto &end : cx.faces(1, e)) {
                if (end.cell == u) {
                    coeff_u = end.coeff;
                }
            }
            // coeff_u is +-1, its own inverse mod N.
            rho.add(e, q * coeff_u);
            w = u;
        }
        residual.add(static_cast<std::size_t>(target), q);
        residual.set(a, 0);
    }
    if (policy == PairingPolicy::alternate) {
        rho += noncontractible_loop(cx);
    }
    if (boundary(cx, rho) != s) {
        throw std::logic_error("pairing path has the wrong boundary");
    }
    return rho;
}

}  // namespace lgtdual
