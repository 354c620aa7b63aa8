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

#ifndef LGTDUAL_ENGINE_H
#define LGTDUAL_ENGINE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "lgtdual/fermion.h"
#include "lgtdual/layout.h"
#include "lgtdual/weyl.h"

namespace lgtdual {

using Amplitude = std::complex<double>;

/// Dense amplitudes over a register layout. Norms are not forced to one:
/// projected branches and imaginary-time states keep their weight.
class StateVector {
   public:
    StateVector() = default;
    /// The all-zero basis state.
    explicit StateVector(RegisterLayout layout);
    StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes);
    static StateVector basis(RegisterLayout layout, const std::vector<int> &digits);
    static StateVector zero_vector(RegisterLayout layout);

    const RegisterLayout &layout() const { return layout_; }
    int modulus() const { return layout_.modulus(); }
    std::size_t num_sites() const { return layout_.num_sites(); }
    std::size_t dimension() const { return amps_.size(); }

    std::vector<Amplitude> &amplitudes() { return amps_; }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }
    Amplitude &operator[](std::size_t k) { return amps_[k]; }
    Amplitude operator[](std::size_t k) const { return amps_[k]; }

    /// Summed in index order, so results do not depend on threading.
    double norm_squared() const;
    double norm() const;
    void normalize();
    void scale(Amplitude factor);

    std::size_t stride(std::size_t site) const;
    int digit(std::size_t index, std::size_t site) const;
    std::vector<int> digits(std::size_t index) const;
    std::size_t index_of(const std::vector<int> &digits) const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);

   private:
    RegisterLayout layout_;
    std::vector<Amplitude> amps_;
};

/// <a|b>.
Amplitude inner(const StateVector &a, const StateVector &b);
/// ||a - b||.
double distance(const StateVector &a, const StateVector &b);
/// min over global phases of ||a - e^{i alpha} b||, evaluated elementwise
/// after rotating b onto a.
double aligned_distance(const StateVector &a, const StateVector &b);

/// A Weyl string, optionally dressed with diagonal twist factors
/// e^{i pi/4 (1 - W)} for qubit Z-strings W, applied before the string:
/// T = op * prod_W e^{i pi/4 (1 - W)}. The generator is T or T + T^dagger.
struct Term {
    WeylString op;
    std::vector<WeylString> twists;
    bool hermitize = false;

    std::size_t num_sites() const { return op.size(); }
};

/// Phase exponent (units of e^{i pi / N}) that T attaches to basis state b.
int term_phase(const Term &term, const StateVector &frame, std::size_t index);

/// A|psi> for the generator A of the term.
StateVector apply_term(const Term &term, const StateVector &psi);
StateVector apply_weyl(const WeylString &op, const StateVector &psi);

enum class TimeMode { real, imaginary };

/// psi <- exp(i theta A) psi (real) or exp(theta A) psi (imaginary).
///
/// Works orbit by orbit under the shift part of the string: on each orbit the
/// generator is a scaled cyclic shift, so the exponential is a small
/// circulant matrix, cached per orbit phase class.
void apply_term_exp(StateVector &psi, const Term &term, double theta, TimeMode mode = TimeMode::real);

enum class ControlledKind { cx, cx_inverse, cs };

/// Controlled shift (power +1 or -1 times the control digit) or a controlled
/// hopping string that fires when the control qubit is 1.
struct ControlledGate {
    ControlledKind kind = ControlledKind::cx;
    std::size_t control = 0;
    std::size_t target = 0;
    WeylString payload;

    static ControlledGate cx(std::size_t control, std::size_t target);
    static ControlledGate cx_inverse(std::size_t control, std::size_t target);
    /// Controlled S on hop `hop`, including the boundary sign of the layout.
    static ControlledGate cs(std::size_t control, const FermionLayout &fermions, std::size_t hop);
};

void apply_controlled(StateVector &psi, const ControlledGate &gate);

/// Applies an N x N matrix to one site.
void apply_site_matrix(StateVector &psi, std::size_t site, const Eigen::MatrixXcd &u);

struct TermExponential {
    Term term;
    double angle = 0.0;
};
struct MeasureStep {
    std::vector<std::size_t> sites;
};
struct ProjectStep {
    std::vector<std::size_t> sites;
    std::vector<int> outcomes;
};
using GateStep = std::variant<TermExponential, ControlledGate, MeasureStep, ProjectStep>;

struct MeasurementResult {
    std::vector<int> outcomes;
    /// Renormalized state on the remaining sites.
    StateVector state;
    double probability = 0.0;
};

/// Samples an X-basis measurement of `sites` by the Born rule. The measured
/// sites are removed from the returned state.
MeasurementResult measure_x(const StateVector &psi, const std::vector<std::size_t> &sites, std::uint64_t seed);

/// Contracts `sites` with the X-basis bra <outcomes~|. Not renormalized.
StateVector project_x(
    const StateVector &psi, const std::vector<std::size_t> &sites, const std::vector<int> &outcomes);

/// All X-basis branches of a set of sites at once: the sites are Fourier
/// transformed a single time and every branch is a slice.
class XBasisBranches {
   public:
    XBasisBranches(const StateVector &psi, std::vector<std::size_t> sites);

    std::size_t count() const { return count_; }
    const std::vector<std::size_t> &sites() const { return sites_; }
    /// Outcome digits of branch k (first listed site is the lowest digit).
    std::vector<int> outcomes_of(std::size_t k) const;
    std::size_t branch_index(const std::vector<int> &outcomes) const;
    StateVector branch(std::size_t k) const;
    double probability(std::size_t k) const;
    /// Branch index drawn from the Born weights with the given seed.
    std::size_t sample(std::uint64_t seed) const;

   private:
    StateVector rotated_;
    std::vector<std::size_t> sites_;
    RegisterLayout rest_;
    std::size_t count_ = 1;
    std::vector<std::size_t> outcome_offset_;
    std::vector<std::size_t> rest_offset_;
};

struct CircuitResult {
    StateVector state;
    std::vector<int> outcomes;
};

/// Runs gate steps in order; measurements draw from consecutive seeds.
CircuitResult run_circuit(StateVector psi, const std::vector<GateStep> &steps, std::uint64_t seed);

/// sum_k weight_k A_k.
struct WeightedTerm {
    Term term;
    double weight = 1.0;
};

constexpr std::size_t kExactDimensionLimit = std::size_t{1} << 14;

Eigen::MatrixXcd dense_matrix(const WeylString &op);
Eigen::MatrixXcd dense_matrix(const Term &term, const RegisterLayout &layout);
Eigen::MatrixXcd dense_hamiltonian(const std::vector<WeightedTerm> &h, const RegisterLayout &layout);

/// e^{-i H t} psi by dense diagonalization. Reference use only.
StateVector exact_evolve(const StateVector &psi, const std::vector<WeightedTerm> &h, double t);

/// One-line JSON header (layout, N, norm) followed by little-endian
/// (re, im) double pairs.
void write_state(std::ostream &out, const StateVector &psi);
StateVector read_state(std::istream &in);

}  // namespace lgtdual

#endif
