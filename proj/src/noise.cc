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
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/QR>

#include "lab_internal.h"
#include "lgtdual/lab.h"

namespace lgtdual {

namespace {

StateVector random_state(const RegisterLayout &layout, std::uint64_t seed) {
    auto rng = seeded_rng(seed, 1);
    std::normal_distribution<double> gauss;
    std::vector<Amplitude> amps(layout.dimension());
    for (auto &a : amps) {
        double re = gauss(rng);
        a = {re, gauss(rng)};
    }
    StateVector psi(layout, std::move(amps));
    psi.normalize();
    return psi;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd a(n, n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            double re = gauss(rng);
            a(r, c) = {re, gauss(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (int k = 0; k < n; k++) {
        std::complex<double> d = r(k, k);
        q.col(k) *= std::abs(d) > 0.0 ? d / std::abs(d) : std::complex<double>{1.0, 0.0};
    }
    return q;
}

}  // namespace

StateVector symmetrize(const StateVector &psi) {
    const int N = psi.modulus();
    WeylString shift(psi.num_sites(), N);
    for (std::size_t j = 0; j < psi.num_sites(); j++) {
        shift.set_x(j, 1);
    }
    StateVector acc = psi;
    StateVector cur = psi;
    for (int p = 1; p < N; p++) {
        cur = apply_weyl(shift, cur);
        acc += cur;
    }
    if (acc.norm() < 1e-12) {
        throw std::domain_error("state has no component in the symmetric sector");
    }
    acc.normalize();
    return acc;
}

StateVector levin_gu_state(const CellComplex &cx) {
    if (cx.kind() != LatticeKind::triangular_torus || cx.modulus() != 2) {
        throw std::invalid_argument("the Levin-Gu state needs a qubit triangular torus");
    }
    ModelSpec m = build_model(ModelId::ttfi, cx, Couplings{std::nullopt, 1.0, std::nullopt, std::nullopt});
    const std::size_t dim = m.layout.dimension();
    StateVector psi(m.layout, std::vector<Amplitude>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
    for (const auto &mt : m.groups.front().terms) {
        StateVector flipped = apply_term(mt.term, psi);
        psi += flipped;
        psi.scale(0.5);
    }
    psi.normalize();
    return psi;
}

StateVector initial_state(const InitialStateSpec &spec, const DualityMap &map) {
    const RegisterLayout &layout = map.source_layout;
    switch (spec.kind) {
        case InitialKind::plus: {
            const std::size_t dim = layout.dimension();
            return StateVector(layout, std::vector<Amplitude>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
        }
        case InitialKind::zero:
            return StateVector(layout);
        case InitialKind::random:
            return random_state(layout, spec.seed);
        case InitialKind::random_symmetric:
            return symmetrize(random_state(layout, spec.seed));
        case InitialKind::levin_gu: {
            StateVector lg = levin_gu_state(map.complex);
            if (!(lg.layout() == layout)) {
                throw std::invalid_argument("Levin-Gu state does not fit the source register of map " +
                                            map_name(map.id));
            }
            return lg;
        }
    }
    throw std::invalid_argument("unknown initial state kind");
}

void apply_noise(StateVector &psi, const std::vector<std::size_t> &sites, const NoiseSpec &noise,
                 std::uint64_t layer_seed) {
    if (noise.channel == NoiseChannel::none || noise.strength == 0.0) {
        return;
    }
    const int N = psi.modulus();
    auto rng = seeded_rng(noise.seed, layer_seed, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t site : sites) {
        if (noise.channel == NoiseChannel::z_rotation) {
            double phi = (unit(rng) - 0.5) * noise.strength * std::numbers::pi;
            Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(N, N);
            for (int a = 0; a < N; a++) {
                // exp(i phi (Z + Z^dagger) / 2) on level a.
                d(a, a) = std::polar(1.0, phi * std::cos(2.0 * std::numbers::pi * a / N));
            }
            apply_site_matrix(psi, site, d);
        } else {
            // Always draw the coin so the stream does not depend on p.
            bool hit = unit(rng) < noise.strength;
            Eigen::MatrixXcd u = haar_unitary(N, rng);
            if (hit) {
                apply_site_matrix(psi, site, u);
            }
        }
    }
}

NoiseReport noise_experiment(const ExperimentConfig &cfg) {
    validate(cfg);
    if (!is_string_map(cfg.map)) {
        throw std::invalid_argument("map: noise studies need a string map (kw, kw_tri, kw_zn)");
    }
    if (cfg.time_mode != TimeMode::real) {
        throw std::invalid_argument("time_mode: noise studies run in real time");
    }
    NoiseReport rep;
    rep.config = cfg;
    rep.runs = cfg.runs;
    DualityMap map = make_map(cfg.map, cfg.lattice.build());
    ModelSpec src = source_model(map, cfg.couplings);
    ModelSpec tgt = target_model(map, cfg.couplings);
    const auto generators = gauge_generators(tgt);
    const StateVector psi = initial_state(cfg.initial, map);
    const TrotterSchedule step = trotter_schedule(src, cfg.t / cfg.k, 1);
    std::vector<std::size_t> sites(map.source_layout.num_sites());
    for (std::size_t j = 0; j < sites.size(); j++) {
        sites[j] = j;
    }

    struct Outcome {
        bool success = false;
        int charge = 0;
        double gauss = 0.0;
        double loop = 0.0;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(cfg.runs));
    parallel_for(outcomes.size(), [&](std::size_t r) {
        StateVector state = psi;
        for (int layer = 0; layer < cfg.k; layer++) {
            evolve(state, step);
            apply_noise(state, sites, cfg.noise, derived_seed(cfg.noise.seed, r, static_cast<std::uint64_t>(layer)));
        }
        DualityRun run = dualize_sample(state, map, derived_seed(cfg.seed, r), PairingPolicy::alternate);
        Outcome &o = outcomes[r];
        o.charge = run.s.total();
        o.success = run.success;
        if (run.success) {
            o.gauss = gauss_residual(run.post, generators);
            Chain loop = run.tau - run.rho;
            WeylString l = weyl_from_chain(PauliKind::z, map.complex, loop, map.target_layout, "edges");
            o.loop = relative_distance(apply_weyl(l, run.post), run.post, false);
        }
    });
    for (const auto &o : outcomes) {
        rep.charges.push_back(o.charge);
        if (o.success) {
            rep.successes++;
            rep.max_gauss_residual = std::max(rep.max_gauss_residual, o.gauss);
            rep.max_loop_residual = std::max(rep.max_loop_residual, o.loop);
        }
    }
    rep.success_rate = static_cast<double>(rep.successes) / rep.runs;
    rep.sigma_half = std::sqrt(0.25 / rep.runs);
    return rep;
}

bool NoiseReport::passed() const {
    bool clean = config.noise.channel == NoiseChannel::none || config.noise.strength == 0.0;
    if (clean && successes != runs) {
        return false;
    }
    return max_gauss_residual < config.tolerance && max_loop_residual < config.tolerance;
}

bool NoiseReport::near_half() const { return std::abs(success_rate - 0.5) <= 5.0 * sigma_half; }

}  // namespace lgtdual
