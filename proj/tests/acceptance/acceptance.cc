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

// Acceptance checks. Usage: lgtdual_acceptance [criterion...]; no argument runs all.
// Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "lgtdual/lab.h"

using namespace lgtdual;

namespace {

const Couplings kGeneric{1.3, 0.9, 0.6, 1.1};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string &s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ExperimentConfig identity_config(MapId id) {
    ExperimentConfig c;
    c.map = id;
    switch (id) {
        case MapId::kw:
        case MapId::fs:
            c.lattice = LatticeSpec::parse("square:2x2");
            break;
        case MapId::kw_zn:
            c.lattice = LatticeSpec::parse("square:2x2", 3);
            break;
        case MapId::kw_tri:
            c.lattice = LatticeSpec::parse("triangular:2x2");
            break;
        case MapId::kw_gm:
        case MapId::jw:
            c.lattice = LatticeSpec::parse("cycle:4");
            break;
    }
    c.couplings = kGeneric;
    c.t = 0.7;
    c.k = 8;
    c.mode = RunMode::exhaustive;
    c.initial = {InitialKind::random_symmetric, 2024};
    return c;
}

const std::vector<VerifyReport> &identity_runs() {
    static const std::vector<VerifyReport> runs = [] {
        std::vector<VerifyReport> out;
        for (MapId id : all_maps()) {
            out.push_back(verify_duality(identity_config(id)));
        }
        return out;
    }();
    return runs;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome main_identity() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto &rep : identity_runs()) {
        const std::string name = map_name(rep.config.map);
        o.require(rep.max_residual < 1e-10, name + " residual " + fmt("%.2e", rep.max_residual));
        o.require(rep.passed(), name + " report checks");
        o.note(name + " " + fmt("%.1e", rep.max_residual) + " (" + std::to_string(rep.nonzero_branches) + "/" +
               std::to_string(rep.branches.size()) + " branches)");
    }
    double s = seconds_since(t0);
    o.require(s < 60.0, "runtime " + fmt("%.1f s", s));
    o.note(fmt("%.1f s", s));
    return o;
}

Outcome gauging_at_zero() {
    Outcome o;
    ExperimentConfig tc;
    tc.map = MapId::kw;
    tc.lattice = LatticeSpec::parse("square:2x2");
    tc.initial = {InitialKind::plus, 0};
    auto a = gauge_check(tc);
    o.require(a.max_deviation < 1e-12 && !a.values.empty(), "toric code deviation " + fmt("%.2e", a.max_deviation));
    o.note("toric code " + std::to_string(a.values.size()) + " stabilizers, max |<g>-1| " +
           fmt("%.1e", a.max_deviation));

    ExperimentConfig ds = tc;
    ds.map = MapId::kw_tri;
    ds.lattice = LatticeSpec::parse("triangular:2x2");
    ds.initial = {InitialKind::levin_gu, 0};
    auto b = gauge_check(ds);
    o.require(b.max_deviation < 1e-12 && !b.values.empty(),
              "double semion deviation " + fmt("%.2e", b.max_deviation));
    o.note("double semion " + std::to_string(b.values.size()) + " stabilizers, max |<g>-1| " +
           fmt("%.1e", b.max_deviation));
    return o;
}

Outcome measurement_parity() {
    Outcome o;
    for (const auto &rep : identity_runs()) {
        if (!is_string_map(rep.config.map)) {
            continue;
        }
        const std::string name = map_name(rep.config.map);
        const int N = rep.config.lattice.modulus;
        std::size_t charged_nonzero = 0;
        std::size_t charged_total = 0;
        for (const auto &b : rep.branches) {
            bool nonzero = b.weight > 1e-12;
            if (b.charge % N != 0) {
                charged_total++;
                charged_nonzero += nonzero ? 1 : 0;
            }
        }
        o.require(charged_nonzero == 0, name + " has weight on charged branches");
        o.require(rep.parity_ok, name + " parity flag");
        o.note(name + " " + std::to_string(rep.branches.size()) + " branches, " + std::to_string(charged_total) +
               " charged, all weight zero");
    }
    return o;
}

Outcome noise_study() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.map = MapId::kw;
    c.lattice = LatticeSpec::parse("square:2x2");
    c.couplings = kGeneric;
    c.t = 0.7;
    c.k = 8;
    c.initial = {InitialKind::random_symmetric, 7};
    c.runs = 200;
    for (auto ch : {NoiseChannel::z_rotation, NoiseChannel::haar}) {
        for (double p : {0.05, 0.2, 0.5}) {
            c.noise = {ch, p, 100 + static_cast<std::uint64_t>(p * 100)};
            c.seed = 31;
            auto rep = noise_experiment(c);
            std::string tag = noise_channel_name(ch) + " p=" + fmt("%.2f", p);
            o.require(rep.max_gauss_residual < 1e-10, tag + " gauss " + fmt("%.2e", rep.max_gauss_residual));
            o.require(rep.successes > 0, tag + " no successful runs");
            o.note(tag + " rate " + fmt("%.3f", rep.success_rate) + " gauss " + fmt("%.1e", rep.max_gauss_residual));
        }
    }
    c.noise = {NoiseChannel::haar, 1.0, 4242};
    c.runs = 1000;
    auto sat = noise_experiment(c);
    o.require(sat.near_half(), "saturating success rate " + fmt("%.3f", sat.success_rate));
    o.require(sat.max_gauss_residual < 1e-10, "saturating gauss " + fmt("%.2e", sat.max_gauss_residual));
    o.note("saturating haar rate " + fmt("%.3f", sat.success_rate) + " (5 sigma = " +
           fmt("%.3f", 5 * sat.sigma_half) + ")");
    double s = seconds_since(t0);
    o.require(s < 300.0, "runtime " + fmt("%.1f s", s));
    o.note(fmt("%.1f s", s));
    return o;
}

Outcome loop_triviality() {
    Outcome o;
    for (MapId id : {MapId::kw, MapId::kw_zn}) {
        ExperimentConfig c = identity_config(id);
        DualityMap map = make_map(id, c.lattice.build());
        StateVector psi = initial_state(c.initial, map);
        evolve(psi, trotter_schedule(source_model(map, c.couplings), c.t, c.k));
        auto canon = dualize_all(psi, map, PairingPolicy::canonical);
        auto alt = dualize_all(psi, map, PairingPolicy::alternate);
        const Chain hole = noncontractible_loop(map.complex);
        double worst = 0.0;
        std::size_t compared = 0;
        bool all_wind = true;
        for (std::size_t i = 0; i < canon.size(); i++) {
            if (canon[i].branch_weight < 1e-12) {
                continue;
            }
            StateVector a = correct(canon[i], map);
            StateVector b = correct(alt[i], map);
            double f = std::norm(inner(a, b)) / (a.norm_squared() * b.norm_squared());
            worst = std::max(worst, 1.0 - f);
            compared++;
            // The two counters differ by a loop that wraps the torus.
            Chain diff = alt[i].tau - canon[i].tau;
            all_wind = all_wind && (diff == hole || diff == -hole);
        }
        const std::string name = map_name(id);
        o.require(compared > 0 && worst <= 1e-10, name + " infidelity " + fmt("%.2e", worst));
        o.require(all_wind, name + " alternate path does not wrap the torus");
        o.note(name + " " + std::to_string(compared) + " branches, max infidelity " + fmt("%.1e", worst));
    }
    return o;
}

Outcome convergence() {
    Outcome o;
    ExperimentConfig c;
    c.map = MapId::kw;
    c.lattice = LatticeSpec::parse("cycle:3");
    c.couplings = kGeneric;
    c.t = 1.0;
    c.initial = {InitialKind::random_symmetric, 5};
    c.k_list = {4, 8, 16, 32};
    auto rep = trotter_convergence(c);
    o.require(rep.source_ratios.size() == 3 && rep.target_ratios.size() == 3, "missing ratios");
    for (std::size_t i = 0; i < rep.source_ratios.size(); i++) {
        double rs = rep.source_ratios[i];
        double rt = rep.target_ratios[i];
        o.require(rs >= 1.6 && rs <= 2.4, "source ratio " + fmt("%.3f", rs));
        o.require(rt >= 1.6 && rt <= 2.4, "target ratio " + fmt("%.3f", rt));
        o.note("k " + std::to_string(rep.rows[i].k) + "->" + std::to_string(rep.rows[i + 1].k) + " ratios " +
               fmt("%.3f", rs) + "/" + fmt("%.3f", rt));
    }
    double worst = 0.0;
    for (const auto &r : rep.rows) {
        worst = std::max(worst, r.duality_residual);
    }
    o.require(worst < 1e-10, "duality residual " + fmt("%.2e", worst));
    o.note("max duality residual " + fmt("%.1e", worst));
    return o;
}

Outcome replacement() {
    Outcome o;
    struct Case {
        MapId id;
        const char *lattice;
        int n;
    };
    for (const Case &cs : {Case{MapId::kw, "square:2x2", 2}, Case{MapId::kw, "cycle:4", 2},
                           Case{MapId::kw_tri, "triangular:2x2", 2}, Case{MapId::kw_zn, "square:2x2", 3},
                           Case{MapId::kw_gm, "cycle:4", 2}, Case{MapId::fs, "square:2x2", 2}}) {
        auto rep = replacement_check(cs.id, LatticeSpec::parse(cs.lattice, cs.n).build(), 100, 17);
        std::string tag = map_name(cs.id) + "@" + cs.lattice;
        o.require(rep.max_residual < 1e-12, tag + " residual " + fmt("%.2e", rep.max_residual));
        o.note(tag + " " + std::to_string(rep.checks) + " checks");
    }
    return o;
}

Outcome imaginary_time() {
    Outcome o;
    ExperimentConfig c = identity_config(MapId::kw_gm);
    c.t = 0.5;
    c.k = 8;
    c.time_mode = TimeMode::imaginary;
    auto rep = verify_duality(c);
    o.require(rep.max_residual < 1e-10, "residual " + fmt("%.2e", rep.max_residual));
    o.require(rep.growth_mismatch && *rep.growth_mismatch < 1e-10, "norm growth mismatch");
    o.require(rep.passed(), "report checks");
    o.note("residual " + fmt("%.1e", rep.max_residual) + ", growth " + fmt("%.6f", rep.source_growth.value_or(0)) +
           " vs " + fmt("%.6f", rep.target_growth.value_or(0)));
    return o;
}

struct Criterion {
    int id;
    const char *title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> all{
        {1, "main identity, all six maps", main_identity},
        {2, "gauging at t=0 (toric code, double semion)", gauging_at_zero},
        {3, "measurement parity on symmetric inputs", measurement_parity},
        {4, "noise study", noise_study},
        {5, "byproduct loop triviality", loop_triviality},
        {6, "Trotter convergence", convergence},
        {7, "replacement identities", replacement},
        {8, "imaginary-time identity", imaginary_time},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; i++) {
        wanted.push_back(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const auto &c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
            continue;
        }
        Outcome r;
        try {
            r = c.run();
        } catch (const std::exception &e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d: %s | %s\n", r.pass ? "PASS" : "FAIL", c.id, c.title, r.detail.c_str());
        std::fflush(stdout);
        failures += r.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
