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

#include "lgtdual/dualizer.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgtdual {

namespace {

struct MapInfo {
    MapId id;
    const char *name;
    ModelId source;
    ModelId target;
    bool string_map;
};

constexpr MapInfo kMaps[] = {
    {MapId::kw, "kw", ModelId::tfi, ModelId::gt, true},
    {MapId::kw_tri, "kw_tri", ModelId::ttfi, ModelId::tgt, true},
    {MapId::kw_zn, "kw_zn", ModelId::zn_clock, ModelId::zn_gt, true},
    {MapId::kw_gm, "kw_gm", ModelId::tl_ising, ModelId::gm, false},
    {MapId::jw, "jw", ModelId::tl_ising, ModelId::qed, false},
    {MapId::fs, "fs", ModelId::sp, ModelId::fs, false},
};

const MapInfo &info(MapId id) {
    for (const auto &m : kMaps) {
        if (m.id == id) {
            return m;
        }
    }
    throw std::invalid_argument("unknown map id");
}

void require(bool ok, MapId id, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument(std::string("map ") + info(id).name + ": " + what);
    }
}

void check_complex(MapId id, const CellComplex &cx) {
    using K = LatticeKind;
    switch (id) {
        case MapId::kw:
            require(cx.kind() == K::cycle || cx.kind() == K::square_torus, id, "needs a cycle or a square torus");
            require(cx.modulus() == 2, id, "needs N = 2");
            break;
        case MapId::kw_tri:
            require(cx.kind() == K::triangular_torus, id, "needs a triangular torus");
            break;
        case MapId::kw_zn:
            require(cx.kind() == K::cycle || cx.kind() == K::square_torus, id, "needs a cycle or a square torus");
            break;
        case MapId::kw_gm:
        case MapId::jw:
            require(cx.kind() == K::cycle, id, "needs a cycle");
            require(cx.modulus() == 2, id, "needs N = 2");
            break;
        case MapId::fs:
            require(cx.kind() == K::square_torus, id, "needs a square torus");
            require(cx.modulus() == 2, id, "needs N = 2");
            break;
    }
}

double pow_n(int N, std::size_t m) { return std::pow(static_cast<double>(N), -0.5 * static_cast<double>(m)); }

}  // namespace

std::string map_name(MapId id) { return info(id).name; }

MapId parse_map(std::string_view name) {
    for (const auto &m : kMaps) {
        if (name == m.name) {
            return m.id;
        }
    }
    throw std::invalid_argument("unknown map '" + std::string(name) + "'");
}

const std::vector<MapId> &all_maps() {
    static const std::vector<MapId> ids = [] {
        std::vector<MapId> out;
        for (const auto &m : kMaps) {
            out.push_back(m.id);
        }
        return out;
    }();
    return ids;
}

ModelId map_source(MapId id) { return info(id).source; }
ModelId map_target(MapId id) { return info(id).target; }
bool is_string_map(MapId id) { return info(id).string_map; }

std::vector<std::size_t> DualityMap::measured_sites() const { return layout.sites_of(measured); }

RegisterLayout ancilla_layout(MapId id, const CellComplex &cx) {
    check_complex(id, cx);
    RegisterLayout l(cx.modulus());
    switch (id) {
        case MapId::kw:
        case MapId::kw_tri:
        case MapId::kw_zn:
            l.add("vertices", cx.cell_count(0), 0).add("edges", cx.cell_count(1), 1);
            break;
        case MapId::kw_gm:
            l.add("vertices", cx.cell_count(0), 0).add("gauge", cx.cell_count(0), 0).add("matter", cx.cell_count(1), 1);
            break;
        case MapId::jw:
            l.add("vertices", cx.cell_count(0), 0)
                .add("gauge", cx.cell_count(0), 0)
                .add("fermion", cx.cell_count(1), 1, true);
            break;
        case MapId::fs:
            l.add("edges", cx.cell_count(1), 1).add("gauge", cx.cell_count(1), 1).add("matter", cx.cell_count(2), 2);
            break;
    }
    return l;
}

std::vector<ControlledGate> build_entangler(const DualityMap &map) {
    const auto &cx = map.complex;
    const auto &l = map.layout;
    const int N = cx.modulus();
    std::vector<ControlledGate> gates;
    auto shift = [&](std::size_t c, std::size_t t, int coeff) {
        if (coeff == 1) {
            gates.push_back(ControlledGate::cx(c, t));
        } else if (coeff == N - 1) {
            gates.push_back(ControlledGate::cx_inverse(c, t));
        } else {
            throw std::logic_error("incidence coefficient outside {+1, -1}");
        }
    };
    switch (map.id) {
        case MapId::kw:
        case MapId::kw_tri:
        case MapId::kw_zn:
            for (std::size_t v = 0; v < cx.cell_count(0); v++) {
                for (const auto &e : cx.cofaces(0, v)) {
                    shift(l.site("vertices", v), l.site("edges", e.cell), e.coeff);
                }
            }
            break;
        case MapId::kw_gm:
            for (std::size_t v = 0; v < cx.cell_count(0); v++) {
                shift(l.site("vertices", v), l.site("gauge", v), 1);
                for (const auto &e : cx.cofaces(0, v)) {
                    shift(l.site("vertices", v), l.site("matter", e.cell), e.coeff);
                }
            }
            break;
        case MapId::jw:
            for (std::size_t v = 0; v < cx.cell_count(0); v++) {
                gates.push_back(ControlledGate::cs(l.site("vertices", v), *map.fermions, v));
                gates.push_back(ControlledGate::cx(l.site("vertices", v), l.site("gauge", v)));
            }
            break;
        case MapId::fs:
            for (std::size_t e = 0; e < cx.cell_count(1); e++) {
                shift(l.site("edges", e), l.site("gauge", e), 1);
                for (const auto &p : cx.cofaces(1, e)) {
                    shift(l.site("edges", e), l.site("matter", p.cell), p.coeff);
                }
            }
            break;
    }
    return gates;
}

DualityMap make_map(MapId id, const CellComplex &cx, int boundary_sign) {
    DualityMap m;
    m.id = id;
    m.complex = cx;
    m.layout = ancilla_layout(id, cx);
    m.measured = m.layout.registers().front().name;
    m.outcome_grade = m.layout.registers().front().grade;
    m.source_layout = RegisterLayout(cx.modulus());
    m.source_layout.add(m.measured, m.layout.at(m.measured).size, m.outcome_grade);
    m.target_layout = m.layout.without(m.measured_sites());
    if (id == MapId::jw) {
        m.fermions = FermionLayout::on_cycle(cx, m.layout, "fermion", boundary_sign);
    }
    m.entangler = build_entangler(m);
    return m;
}

ModelSpec source_model(const DualityMap &map, const Couplings &couplings) {
    ModelSpec m = build_model(map_source(map.id), map.complex, couplings);
    if (!(m.layout == map.source_layout)) {
        throw std::logic_error("source model layout does not match the map");
    }
    return m;
}

ModelSpec target_model(const DualityMap &map, const Couplings &couplings) {
    ModelSpec m = map.id == MapId::jw ? build_qed_model(map.complex, couplings, map.fermions->boundary_sign())
                                      : build_model(map_target(map.id), map.complex, couplings);
    if (!(m.layout == map.target_layout)) {
        throw std::logic_error("target model layout does not match the map");
    }
    return m;
}

StateVector embed(const StateVector &psi, const DualityMap &map) {
    if (!(psi.layout() == map.source_layout)) {
        throw std::invalid_argument("state does not live on the measured register " + map.measured);
    }
    std::vector<Amplitude> amps(map.layout.dimension(), Amplitude{0.0, 0.0});
    // The measured register holds the lowest digits.
    for (std::size_t b = 0; b < psi.dimension(); b++) {
        amps[b] = psi[b];
    }
    return StateVector(map.layout, std::move(amps));
}

void apply_entangler(StateVector &psi, const DualityMap &map) {
    for (const auto &g : map.entangler) {
        apply_controlled(psi, g);
    }
}

StateVector gauged_input(const StateVector &psi, const DualityMap &map) {
    if (!(psi.layout() == map.source_layout)) {
        throw std::invalid_argument("state does not live on the measured register " + map.measured);
    }
    const int N = map.layout.modulus();
    const std::size_t m = map.source_layout.num_sites();
    const std::size_t n = map.layout.num_sites();
    StateVector out = StateVector::zero_vector(map.target_layout);
    std::vector<int> d(n);
    for (std::size_t b = 0; b < psi.dimension(); b++) {
        if (psi[b] == Amplitude{0.0, 0.0}) {
            continue;
        }
        std::fill(d.begin(), d.end(), 0);
        std::size_t r = b;
        for (std::size_t j = 0; j < m; j++) {
            d[j] = static_cast<int>(r % static_cast<std::size_t>(N));
            r /= static_cast<std::size_t>(N);
        }
        int phase = 0;
        for (const auto &g : map.entangler) {
            switch (g.kind) {
                case ControlledKind::cx:
                    d[g.target] = (d[g.target] + d[g.control]) % N;
                    break;
                case ControlledKind::cx_inverse:
                    d[g.target] = ((d[g.target] - d[g.control]) % N + N) % N;
                    break;
                case ControlledKind::cs:
                    if (d[g.control] == 1) {
                        phase += g.payload.apply_to_basis(d);
                    }
                    break;
            }
        }
        std::size_t idx = 0;
        for (std::size_t j = n; j-- > m;) {
            idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(d[j]);
        }
        double angle = std::numbers::pi * phase / N;
        out[idx] += psi[b] * Amplitude{std::cos(angle), std::sin(angle)};
    }
    return out;
}

Chain outcome_chain(const DualityMap &map, const std::vector<int> &outcomes) {
    std::size_t size = map.source_layout.num_sites();
    if (outcomes.size() != size) {
        throw std::invalid_argument("expected " + std::to_string(size) + " outcomes");
    }
    return Chain::from_coefficients(map.complex, map.outcome_grade, outcomes);
}

namespace {

DualityRun make_run(const DualityMap &map, std::vector<int> outcomes, StateVector post, double gauged_norm,
                    PairingPolicy policy) {
    DualityRun run;
    run.s = outcome_chain(map, outcomes);
    run.outcomes = std::move(outcomes);
    run.post = std::move(post);
    run.branch_weight = run.post.norm();
    double expected = pow_n(map.layout.modulus(), map.source_layout.num_sites()) * gauged_norm;
    run.prefactor_check = expected > 0.0 ? run.branch_weight / expected - 1.0 : 0.0;
    if (!is_string_map(map.id)) {
        run.success = true;
        return run;
    }
    try {
        run.rho = pair_outcomes(map.complex, run.s, PairingPolicy::canonical);
        run.tau = pair_outcomes(map.complex, run.s, policy);
        run.success = true;
    } catch (const IsolatedMonopole &e) {
        run.success = false;
        run.failure = e.what();
    }
    return run;
}

StateVector entangled(const StateVector &psi, const DualityMap &map) {
    StateVector full = embed(psi, map);
    apply_entangler(full, map);
    return full;
}

}  // namespace

DualityRun dualize_branch(const StateVector &psi, const DualityMap &map, const std::vector<int> &outcomes,
                          PairingPolicy counter_policy) {
    double gn = gauged_input(psi, map).norm();
    StateVector full = entangled(psi, map);
    StateVector post = project_x(full, map.measured_sites(), outcomes);
    return make_run(map, outcomes, std::move(post), gn, counter_policy);
}

DualityRun dualize_sample(const StateVector &psi, const DualityMap &map, std::uint64_t seed,
                          PairingPolicy counter_policy) {
    return std::move(dualize_samples(psi, map, {seed}, counter_policy).front());
}

std::vector<DualityRun> dualize_samples(const StateVector &psi, const DualityMap &map,
                                        const std::vector<std::uint64_t> &seeds, PairingPolicy counter_policy) {
    double gn = gauged_input(psi, map).norm();
    StateVector full = entangled(psi, map);
    XBasisBranches branches(full, map.measured_sites());
    std::vector<DualityRun> runs;
    runs.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        std::size_t pick = branches.sample(seed);
        // Unnormalized branch: sqrt(prob) * ||full|| times the collapsed state.
        runs.push_back(make_run(map, branches.outcomes_of(pick), branches.branch(pick), gn, counter_policy));
    }
    return runs;
}

std::vector<DualityRun> dualize_all(const StateVector &psi, const DualityMap &map, PairingPolicy counter_policy) {
    double gn = gauged_input(psi, map).norm();
    XBasisBranches branches(entangled(psi, map), map.measured_sites());
    std::vector<DualityRun> runs;
    runs.reserve(branches.count());
    for (std::size_t k = 0; k < branches.count(); k++) {
        runs.push_back(make_run(map, branches.outcomes_of(k), branches.branch(k), gn, counter_policy));
    }
    return runs;
}

WeylString byproduct(const DualityMap &map, const Chain &s) {
    const auto &cx = map.complex;
    if (is_string_map(map.id)) {
        Chain rho = pair_outcomes(cx, s, PairingPolicy::canonical);
        return weyl_from_chain(PauliKind::z, cx, rho, map.target_layout, "edges");
    }
    return weyl_from_chain(PauliKind::z, cx, s, map.target_layout, "gauge");
}

WeylString counter(const DualityMap &map, const Chain &s, PairingPolicy policy) {
    if (is_string_map(map.id)) {
        Chain tau = pair_outcomes(map.complex, s, policy);
        return weyl_from_chain(PauliKind::z, map.complex, tau, map.target_layout, "edges").dagger();
    }
    return byproduct(map, s).dagger();
}

StateVector correct(const DualityRun &run, const DualityMap &map) {
    if (!run.success) {
        throw std::logic_error("cannot correct an unsuccessful run: " + run.failure);
    }
    WeylString w = is_string_map(map.id)
                       ? weyl_from_chain(PauliKind::z, map.complex, run.tau, map.target_layout, "edges").dagger()
                       : byproduct(map, run.s).dagger();
    return apply_weyl(w, run.post);
}

std::vector<TableRow> duality_table() {
    return {
        {MapId::kw, ModelId::tfi, ModelId::gt, "cycle or square", "vertices", "Z(rho), d rho = s"},
        {MapId::kw_tri, ModelId::ttfi, ModelId::tgt, "triangular", "vertices", "Z(rho), d rho = s"},
        {MapId::kw_zn, ModelId::zn_clock, ModelId::zn_gt, "cycle or square, any N", "vertices", "Z(rho), d rho = s"},
        {MapId::kw_gm, ModelId::tl_ising, ModelId::gm, "cycle", "vertices", "prod Z_gauge(v)^s(v)"},
        {MapId::jw, ModelId::tl_ising, ModelId::qed, "cycle", "vertices", "prod Z_gauge(v)^s(v)"},
        {MapId::fs, ModelId::sp, ModelId::fs, "square", "edges", "prod Z_gauge(e)^s(e)"},
    };
}

}  // namespace lgtdual
