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

#ifndef LGTDUAL_DUALIZER_H
#define LGTDUAL_DUALIZER_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgtdual/complex.h"
#include "lgtdual/engine.h"
#include "lgtdual/fermion.h"
#include "lgtdual/layout.h"
#include "lgtdual/models.h"

namespace lgtdual {

enum class MapId { kw, kw_tri, kw_zn, kw_gm, jw, fs };

std::string map_name(MapId id);
MapId parse_map(std::string_view name);
const std::vector<MapId> &all_maps();

/// Source and target model of a map.
ModelId map_source(MapId id);
ModelId map_target(MapId id);
/// String maps need neutral outcomes and a pairing path; matter maps do not.
bool is_string_map(MapId id);

/// A measurement-assisted duality map on a fixed complex.
struct DualityMap {
    MapId id = MapId::kw;
    CellComplex complex;
    /// Layout of the source model (the measured register alone).
    RegisterLayout source_layout;
    /// Measured register followed by the ancilla registers, all in |0>.
    RegisterLayout layout;
    /// What is left after the measured register is removed; equal to the
    /// layout of the target model.
    RegisterLayout target_layout;
    std::string measured;
    /// Grade of the cells carrying the measurement outcomes.
    int outcome_grade = 0;
    /// Ring order of the fermion modes on `layout` (jw only).
    std::optional<FermionLayout> fermions;
    std::vector<ControlledGate> entangler;

    std::vector<std::size_t> measured_sites() const;
};

/// `boundary_sign` is the fermion ring sign q used by jw.
DualityMap make_map(MapId id, const CellComplex &cx, int boundary_sign = -1);

/// Measured register first, then the ancillas.
RegisterLayout ancilla_layout(MapId id, const CellComplex &cx);

/// CX / CX^-1 / CS gates, all controlled by the measured register.
std::vector<ControlledGate> build_entangler(const DualityMap &map);

/// Source model / target model of the map with the given couplings. The
/// target uses the same fermion boundary sign as the entangler.
ModelSpec source_model(const DualityMap &map, const Couplings &couplings);
ModelSpec target_model(const DualityMap &map, const Couplings &couplings);

/// The source state copied into the ancilla layout (ancillas in |0>).
StateVector embed(const StateVector &psi, const DualityMap &map);
/// Applies the entangler in gate order.
void apply_entangler(StateVector &psi, const DualityMap &map);

/// sum_c C(c) |c> -> sum_c C(c) |ancillas of c>: the ancilla state the
/// entangler writes for basis input c, with the measured register removed.
StateVector gauged_input(const StateVector &psi, const DualityMap &map);

struct DualityRun {
    std::vector<int> outcomes;
    /// Outcomes as a chain on the measured cells.
    Chain s;
    Chain rho;
    Chain tau;
    bool success = false;
    std::string failure;
    /// Post-measurement state, not renormalized.
    StateVector post;
    /// ||post||.
    double branch_weight = 0.0;
    /// branch_weight / (N^{-m/2} ||gauged input||) - 1, for symmetric input.
    double prefactor_check = 0.0;
};

/// Outcomes chain on the measured cells.
Chain outcome_chain(const DualityMap &map, const std::vector<int> &outcomes);

/// One fixed branch.
DualityRun dualize_branch(const StateVector &psi, const DualityMap &map, const std::vector<int> &outcomes,
                          PairingPolicy counter_policy = PairingPolicy::canonical);
/// Born-rule sample.
DualityRun dualize_sample(const StateVector &psi, const DualityMap &map, std::uint64_t seed,
                          PairingPolicy counter_policy = PairingPolicy::canonical);
/// Every branch, in outcome index order (first measured site = lowest digit).
/// One measurement per seed on a single prepared state.
std::vector<DualityRun> dualize_samples(const StateVector &psi, const DualityMap &map,
                                        const std::vector<std::uint64_t> &seeds,
                                        PairingPolicy counter_policy = PairingPolicy::canonical);
std::vector<DualityRun> dualize_all(const StateVector &psi, const DualityMap &map,
                                    PairingPolicy counter_policy = PairingPolicy::canonical);

/// The byproduct operator on the target layout. Throws IsolatedMonopole for
/// a non-neutral string-map outcome.
WeylString byproduct(const DualityMap &map, const Chain &s);
/// The counter operator for the pairing policy; Z(tau)^dagger for string maps.
WeylString counter(const DualityMap &map, const Chain &s, PairingPolicy policy = PairingPolicy::canonical);
/// Applies the run's counter operator to its post-measurement state.
StateVector correct(const DualityRun &run, const DualityMap &map);

struct TableRow {
    MapId map;
    ModelId source;
    ModelId target;
    std::string lattice;
    std::string measured;
    std::string byproduct;
};

/// Source model, target model and map for each of the six dualities.
std::vector<TableRow> duality_table();

}  // namespace lgtdual

#endif
