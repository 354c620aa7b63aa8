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

#ifndef LGTDUAL_WEYL_H
#define LGTDUAL_WEYL_H

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lgtdual/complex.h"
#include "lgtdual/layout.h"

namespace lgtdual {

/// Generalized Pauli operator  e^{i pi phase / N} * prod_j X_j^{x_j} Z_j^{z_j}
/// on N-level sites, with Z X = w X Z and w = e^{2 pi i / N}.
///
/// The phase exponent lives in Z_{2N}, so square roots of w (such as the i in
/// Y = i X Z at N = 2) stay exact.
class WeylString {
   public:
    WeylString() = default;
    WeylString(std::size_t num_sites, int modulus);

    static WeylString x_at(std::size_t num_sites, int modulus, std::size_t site, int power = 1);
    static WeylString z_at(std::size_t num_sites, int modulus, std::size_t site, int power = 1);
    /// Qubit strings from text like "-iXZ_Y" (I or _ is identity).
    static WeylString from_pauli_text(std::string_view text);

    std::size_t size() const { return x_.size(); }
    int modulus() const { return modulus_; }
    int x(std::size_t j) const { return x_[j]; }
    int z(std::size_t j) const { return z_[j]; }
    /// Phase exponent in units of e^{i pi / N}, in [0, 2N).
    int phase() const { return phase_; }

    void set_x(std::size_t j, int power);
    void set_z(std::size_t j, int power);
    void set_phase(int exponent);
    void add_phase(int exponent);

    std::complex<double> scalar() const;
    bool is_identity() const;
    bool is_diagonal() const;
    bool is_hermitian() const;
    std::vector<std::size_t> support() const;

    WeylString &operator*=(const WeylString &rhs);
    WeylString operator*(const WeylString &rhs) const;
    WeylString dagger() const;
    WeylString pow(int k) const;

    /// Acts on the computational basis state `digits` in place and returns
    /// the phase exponent (units of e^{i pi / N}) it picks up.
    int apply_to_basis(std::vector<int> &digits) const;

    std::string str() const;

    bool operator==(const WeylString &) const = default;

   private:
    int modulus_ = 2;
    int phase_ = 0;
    std::vector<int> x_;
    std::vector<int> z_;

    void check_compatible(const WeylString &other) const;
};

/// k with P Q = w^k Q P.
int commutation_phase(const WeylString &p, const WeylString &q);

enum class PauliKind { x, z };

/// X(c) or Z(c) for a chain whose cells index the sites of `reg`.
WeylString weyl_from_chain(
    PauliKind kind, const CellComplex &cx, const Chain &c, const RegisterLayout &layout, std::string_view reg);

}  // namespace lgtdual

#endif
