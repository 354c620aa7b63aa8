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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lab_internal.h"
#include "lgtdual/lab.h"

namespace lgtdual {

double relative_distance(const StateVector &a, const StateVector &b, bool aligned) {
    double scale = std::max(a.norm(), b.norm());
    if (scale == 0.0) {
        return 0.0;
    }
    return (aligned ? aligned_distance(a, b) : distance(a, b)) / scale;
}

double gauss_residual(const StateVector &psi, const std::vector<WeylString> &generators) {
    double n = psi.norm();
    if (n == 0.0) {
        return 0.0;
    }
    double worst = 0.0;
    for (const auto &g : generators) {
        worst = std::max(worst, distance(apply_weyl(g, psi), psi) / n);
    }
    return worst;
}

namespace {

struct Prepared {
    DualityMap map;
    ModelSpec source;
    ModelSpec target;
    StateVector psi;
    StateVector gauged;
};

Prepared prepare(const ExperimentConfig &cfg) {
    DualityMap map = make_map(cfg.map, cfg.lattice.build());
    ModelSpec src = source_model(map, cfg.couplings);
    ModelSpec tgt = target_model(map, cfg.couplings);
    StateVector psi = initial_state(cfg.initial, map);
    StateVector g = gauged_input(psi, map);
    return {std::move(map), std::move(src), std::move(tgt), std::move(psi), std::move(g)};
}

}  // namespace

VerifyReport verify_duality(const ExperimentConfig &cfg) {
    validate(cfg);
    VerifyReport rep;
    rep.config = cfg;
    Prepared p = prepare(cfg);
    const DualityMap &map = p.map;
    const int N = map.layout.modulus();
    const std::size_t m = map.source_layout.num_sites();

    StateVector evolved = p.psi;
    evolve(evolved, trotter_schedule(p.source, cfg.t, cfg.k, cfg.time_mode));
    StateVector expected = p.gauged;
    evolve(expected, trotter_schedule(p.target, cfg.t, cfg.k, cfg.time_mode));
    expected.scale(std::pow(static_cast<double>(N), -0.5 * static_cast<double>(m)));

    if (cfg.time_mode == TimeMode::imaginary) {
        StateVector a = p.psi;
        StateVector b = p.gauged;
        rep.source_growth = evolve_imaginary(a, trotter_schedule(p.source, cfg.t, cfg.k, cfg.time_mode));
        rep.target_growth = evolve_imaginary(b, trotter_schedule(p.target, cfg.t, cfg.k, cfg.time_mode));
        rep.growth_mismatch = std::abs(*rep.source_growth - *rep.target_growth) / *rep.source_growth;
    }

    std::vector<DualityRun> runs;
    if (cfg.mode == RunMode::exhaustive) {
        runs = dualize_all(evolved, map, cfg.counter_policy);
    } else {
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < cfg.shots; i++) {
            seeds.push_back(derived_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        }
        runs = dualize_samples(evolved, map, seeds, cfg.counter_policy);
    }

    const auto generators = gauge_generators(p.target);
    const double floor = 1e-12 * evolved.norm();
    rep.branches.resize(runs.size());
    parallel_for(runs.size(), [&](std::size_t i) {
        const DualityRun &run = runs[i];
        BranchResult &b = rep.branches[i];
        b.outcomes = run.outcomes;
        b.charge = run.s.total();
        b.weight = run.branch_weight;
        b.success = run.success;
        if (run.branch_weight <= floor || !run.success) {
            return;
        }
        StateVector corrected = correct(run, map);
        b.residual = relative_distance(corrected, expected, false);
        b.residual_aligned = relative_distance(corrected, expected, true);
        b.byproduct_residual = relative_distance(run.post, apply_weyl(byproduct(map, run.s), expected), false);
        b.prefactor_deviation = std::abs(run.prefactor_check);
        b.gauss_residual = gauss_residual(corrected, generators);
    });

    double wsum = 0.0;
    for (std::size_t i = 0; i < runs.size(); i++) {
        const BranchResult &b = rep.branches[i];
        wsum += b.weight * b.weight;
        if (b.weight <= floor) {
            continue;
        }
        rep.nonzero_branches++;
        if (!b.success || (is_string_map(cfg.map) && b.charge != 0)) {
            rep.parity_ok = false;
            continue;
        }
        rep.max_residual = std::max(rep.max_residual, *b.residual);
        rep.max_residual_aligned = std::max(rep.max_residual_aligned, *b.residual_aligned);
        rep.max_byproduct_residual = std::max(rep.max_byproduct_residual, *b.byproduct_residual);
        rep.max_prefactor_deviation = std::max(rep.max_prefactor_deviation, *b.prefactor_deviation);
        rep.max_gauss_residual = std::max(rep.max_gauss_residual, *b.gauss_residual);
    }
    if (cfg.mode == RunMode::exhaustive) {
        rep.weight_sum = wsum / evolved.norm_squared();
    }
    return rep;
}

bool VerifyReport::passed() const {
    const double tol = config.tolerance;
    bool ok = nonzero_branches > 0 && parity_ok && max_residual < tol && max_byproduct_residual < tol &&
              max_prefactor_deviation < tol && max_gauss_residual < tol;
    if (weight_sum) {
        ok = ok && std::abs(*weight_sum - 1.0) < std::max(tol, 1e-12);
    }
    if (growth_mismatch) {
        ok = ok && *growth_mismatch < tol;
    }
    return ok;
}

ConvergenceReport trotter_convergence(const ExperimentConfig &cfg) {
    validate(cfg);
    if (cfg.time_mode != TimeMode::real) {
        throw std::invalid_argument("time_mode: convergence is measured against real-time exact evolution");
    }
    ConvergenceReport rep;
    rep.config = cfg;
    Prepared p = prepare(cfg);
    if (p.target.layout.dimension() > kExactDimensionLimit) {
        throw std::invalid_argument("lattice: target register too large for exact evolution");
    }
    // t = 0 is the identity; skip the matrix exponential and its rounding.
    StateVector src_exact = cfg.t == 0.0 ? p.psi : exact_evolve(p.psi, p.source.hamiltonian(), cfg.t);
    StateVector tgt_exact = cfg.t == 0.0 ? p.gauged : exact_evolve(p.gauged, p.target.hamiltonian(), cfg.t);
    for (int k : cfg.k_list) {
        ExperimentConfig c = cfg;
        c.k = k;
        ConvergenceRow row;
        row.k = k;
        row.duality_residual = verify_duality(c).max_residual;
        StateVector a = p.psi;
        evolve(a, trotter_schedule(p.source, cfg.t, k));
        row.source_error = relative_distance(a, src_exact, false);
        StateVector b = p.gauged;
        evolve(b, trotter_schedule(p.target, cfg.t, k));
        row.target_error = relative_distance(b, tgt_exact, false);
        rep.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < rep.rows.size(); i++) {
        const auto &lo = rep.rows[i];
        const auto &hi = rep.rows[i + 1];
        if (hi.k != 2 * lo.k || hi.source_error < 1e-14 || hi.target_error < 1e-14) {
            continue;
        }
        rep.source_ratios.push_back(lo.source_error / hi.source_error);
        rep.target_ratios.push_back(lo.target_error / hi.target_error);
    }
    return rep;
}

bool ConvergenceReport::passed() const {
    auto in_band = [](double r) { return r >= 1.6 && r <= 2.4; };
    for (const auto &row : rows) {
        if (!(row.duality_residual < config.tolerance)) {
            return false;
        }
    }
    return std::all_of(source_ratios.begin(), source_ratios.end(), in_band) &&
           std::all_of(target_ratios.begin(), target_ratios.end(), in_band);
}

std::string ConvergenceReport::csv() const {
    std::string out = "k,duality_residual,source_error,target_error\n";
    char line[160];
    for (const auto &row : rows) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", row.k, row.duality_residual, row.source_error,
                      row.target_error);
        out += line;
    }
    return out;
}

namespace {

struct ZPair {
    WeylString measured;
    WeylString ancilla;
};

Chain cell_chain(const CellComplex &cx, int grade, std::size_t k) { return Chain::cell(cx, grade, k); }

}  // namespace

ReplacementReport replacement_check(MapId id, const CellComplex &cx, int configurations, std::uint64_t seed) {
    if (id == MapId::jw) {
        throw std::invalid_argument("replacement check covers the bosonic maps only");
    }
    if (configurations < 1) {
        throw std::invalid_argument("configurations must be at least 1");
    }
    DualityMap map = make_map(id, cx);
    const RegisterLayout &L = map.layout;
    const int N = L.modulus();
    auto z = [&](const Chain &c, const char *reg) { return weyl_from_chain(PauliKind::z, cx, c, L, reg); };
    auto x = [&](const Chain &c, const char *reg) { return weyl_from_chain(PauliKind::x, cx, c, L, reg); };

    std::vector<ZPair> pairs;
    std::vector<WeylString> hops;
    if (is_string_map(id)) {
        for (std::size_t e = 0; e < cx.cell_count(1); e++) {
            Chain s = cell_chain(cx, 1, e);
            pairs.push_back({z(boundary(cx, s), "vertices"), z(s, "edges")});
        }
        for (std::size_t v = 0; v < cx.cell_count(0); v++) {
            Chain s = cell_chain(cx, 0, v);
            hops.push_back(x(s, "vertices") * x(coboundary(cx, s), "edges"));
        }
    } else if (id == MapId::kw_gm) {
        for (std::size_t v = 0; v < cx.cell_count(0); v++) {
            Chain s = cell_chain(cx, 0, v);
            pairs.push_back({z(s, "vertices"), z(s, "gauge")});
            hops.push_back(x(s, "vertices") * x(s, "gauge") * x(coboundary(cx, s), "matter"));
        }
        for (std::size_t e = 0; e < cx.cell_count(1); e++) {
            Chain s = cell_chain(cx, 1, e);
            pairs.push_back({z(boundary(cx, s), "vertices"), z(s, "matter")});
        }
    } else {
        for (std::size_t v = 0; v < cx.cell_count(0); v++) {
            Chain d = coboundary(cx, cell_chain(cx, 0, v));
            hops.push_back(x(d, "edges") * x(d, "gauge"));
        }
        for (std::size_t e = 0; e < cx.cell_count(1); e++) {
            Chain s = cell_chain(cx, 1, e);
            pairs.push_back({z(s, "edges"), z(s, "gauge")});
            hops.push_back(x(s, "edges") * x(s, "gauge") * x(coboundary(cx, s), "matter"));
        }
        for (std::size_t f = 0; f < cx.cell_count(2); f++) {
            Chain s = cell_chain(cx, 2, f);
            pairs.push_back({z(boundary(cx, s), "edges"), z(s, "matter")});
        }
    }

    ReplacementReport rep;
    rep.map = id;
    rep.lattice = cx.describe();
    rep.configurations = configurations;
    auto rng = seeded_rng(seed, 7);
    std::uniform_int_distribution<int> digit(0, N - 1);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> power(1, N - 1);
    for (int conf = 0; conf < configurations; conf++) {
        std::vector<int> c(map.source_layout.num_sites());
        for (auto &d : c) {
            d = digit(rng);
        }
        // |c; ancillas(c)> is a single basis ket; read its digits.
        StateVector anc = gauged_input(StateVector::basis(map.source_layout, c), map);
        std::size_t idx = 0;
        while (std::abs(anc[idx]) < 0.5) {
            idx++;
        }
        std::vector<int> digits = c;
        for (int d : anc.digits(idx)) {
            digits.push_back(d);
        }
        // Lambda: which conjugated X terms act, with a random power for N > 2.
        // X strings map kets to kets, so their phase is common to both sides.
        for (const auto &h : hops) {
            if (bit(rng)) {
                h.pow(power(rng)).apply_to_basis(digits);
            }
        }
        for (const auto &pr : pairs) {
            std::vector<int> a = digits;
            std::vector<int> b = digits;
            int pa = pr.measured.apply_to_basis(a);
            int pb = pr.ancilla.apply_to_basis(b);
            double r = a == b ? std::abs(std::polar(1.0, std::numbers::pi * (pa - pb) / N) - 1.0) : 2.0;
            rep.max_residual = std::max(rep.max_residual, r);
            rep.checks++;
        }
    }
    return rep;
}

}  // namespace lgtdual
