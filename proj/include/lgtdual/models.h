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

#ifndef LGTDUAL_MODELS_H
#define LGTDUAL_MODELS_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgtdual/complex.h"
#include "lgtdual/engine.h"
#include "lgtdual/fermion.h"
#include "lgtdual/layout.h"

namespace lgtdual {

enum class ModelId { tfi, gt, ttfi, tgt, zn_clock, zn_gt, tl_ising, gm, qed, sp, fs };

std::string model_name(ModelId id);
ModelId parse_model(std::string_view name);
const std::vector<ModelId> &all_models();
bool is_gauged(ModelId id);

/// Dimensionless couplings. Which ones a model needs:
/// tfi/gt/zn_clock/zn_gt: lambda; ttfi/tgt: g; tl_ising/gm/qed: g, h;
/// sp/fs: mu, lambda.
struct Couplings {
    std::optional<double> lambda;
    std::optional<double> g;
    std::optional<double> h;
    std::optional<double> mu;
};

struct ModelTerm {
    Term term;
    /// Coupling in front of the term; H = -sum weight * A.
    double weight = 1.0;
    std::string label;
};

/// Terms of one product in T(t), in the order they are written.
struct FactorGroup {
    std::string name;
    std::vector<ModelTerm> terms;
};

struct ModelSpec {
    ModelId id = ModelId::tfi;
    CellComplex complex;
    Couplings couplings;
    RegisterLayout layout;
    std::vector<FactorGroup> groups;
    /// Global symmetry generators for ungauged models, Gauss-law generators
    /// for gauged ones.
    std::vector<WeylString> symmetries;
    std::optional<FermionLayout> fermions;

    std::vector<WeightedTerm> hamiltonian() const;
    std::size_t term_count() const;
};

/// Builds the model and checks that every term commutes with every declared
/// generator. Throws std::invalid_argument on a lattice/coupling mismatch.
ModelSpec build_model(ModelId id, const CellComplex &cx, const Couplings &couplings);
/// QED with an explicit fermion boundary sign q.
ModelSpec build_qed_model(const CellComplex &cx, const Couplings &couplings, int boundary_sign);

/// Gauss-law generators of a gauged model.
std::vector<WeylString> gauge_generators(const ModelSpec &m);

/// Stabilizer-type terms worth checking on a target state: gauge generators
/// plus, for gt and tgt, the magnetic terms.
std::vector<std::pair<std::string, Term>> stabilizers(const ModelSpec &m);

struct TrotterFactor {
    Term term;
    /// dt * weight.
    double angle = 0.0;
};

/// Factors in written order: the product applies the last one first.
struct TrotterSchedule {
    RegisterLayout layout;
    std::vector<TrotterFactor> factors;
    int steps = 1;
    double time = 0.0;
    TimeMode mode = TimeMode::real;
};

TrotterSchedule trotter_schedule(const ModelSpec &m, double t, int k, TimeMode mode = TimeMode::real);

void evolve(StateVector &psi, const TrotterSchedule &schedule);

/// Imaginary-time evolution: the state is renormalized at the end and the
/// accumulated norm growth ||T psi|| / ||psi|| is returned.
double evolve_imaginary(StateVector &psi, const TrotterSchedule &schedule);

}  // namespace lgtdual

#endif
