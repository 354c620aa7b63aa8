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
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lab_internal.h"
#include "lgtdual/lab.h"

namespace lgtdual {

namespace {

template <typename E>
struct NameTable {
    E value;
    const char *name;
};

constexpr NameTable<RunMode> kRunModes[] = {{RunMode::exhaustive, "exhaustive"}, {RunMode::sampled, "sampled"}};
constexpr NameTable<InitialKind> kInitialKinds[] = {{InitialKind::plus, "plus"},
                                                    {InitialKind::zero, "zero"},
                                                    {InitialKind::random_symmetric, "random_symmetric"},
                                                    {InitialKind::random, "random"},
                                                    {InitialKind::levin_gu, "levin_gu"}};
constexpr NameTable<NoiseChannel> kChannels[] = {
    {NoiseChannel::none, "none"}, {NoiseChannel::z_rotation, "z_rotation"}, {NoiseChannel::haar, "haar"}};
constexpr NameTable<TimeMode> kTimeModes[] = {{TimeMode::real, "real"}, {TimeMode::imaginary, "imaginary"}};

template <typename E, std::size_t M>
std::string name_of(const NameTable<E> (&table)[M], E value) {
    for (const auto &row : table) {
        if (row.value == value) {
            return row.name;
        }
    }
    throw std::invalid_argument("unnamed enum value");
}

template <typename E, std::size_t M>
E value_of(const NameTable<E> (&table)[M], std::string_view name, const char *what) {
    std::string norm(name);
    std::replace(norm.begin(), norm.end(), '-', '_');
    for (const auto &row : table) {
        if (norm == row.name) {
            return row.value;
        }
    }
    std::string msg = std::string("unknown ") + what + " '" + std::string(name) + "' (expected one of:";
    for (const auto &row : table) {
        msg += std::string(" ") + row.name;
    }
    throw std::invalid_argument(msg + ")");
}

std::size_t parse_extent(std::string_view s, std::string_view whole) {
    std::size_t v = 0;
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("bad lattice extent in '" + std::string(whole) + "'");
    }
    for (char c : s) {
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
}

}  // namespace

std::string run_mode_name(RunMode m) { return name_of(kRunModes, m); }
RunMode parse_run_mode(std::string_view s) { return value_of(kRunModes, s, "mode"); }
std::string initial_kind_name(InitialKind k) { return name_of(kInitialKinds, k); }
InitialKind parse_initial_kind(std::string_view s) { return value_of(kInitialKinds, s, "initial state"); }
std::string noise_channel_name(NoiseChannel c) { return name_of(kChannels, c); }
NoiseChannel parse_noise_channel(std::string_view s) { return value_of(kChannels, s, "noise channel"); }
std::string time_mode_name(TimeMode m) { return name_of(kTimeModes, m); }
TimeMode parse_time_mode(std::string_view s) { return value_of(kTimeModes, s, "time mode"); }

LatticeSpec LatticeSpec::parse(std::string_view text, int modulus) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("lattice '" + std::string(text) + "' is not of the form kind:size");
    }
    std::string_view kind = text.substr(0, colon);
    std::string_view size = text.substr(colon + 1);
    LatticeSpec spec;
    spec.modulus = modulus;
    if (kind == "cycle") {
        spec.kind = LatticeKind::cycle;
        spec.extents = {parse_extent(size, text)};
    } else if (kind == "square" || kind == "triangular") {
        spec.kind = kind == "square" ? LatticeKind::square_torus : LatticeKind::triangular_torus;
        auto x = size.find('x');
        if (x == std::string_view::npos) {
            throw std::invalid_argument("lattice '" + std::string(text) + "' needs extents like 2x2");
        }
        spec.extents = {parse_extent(size.substr(0, x), text), parse_extent(size.substr(x + 1), text)};
    } else {
        throw std::invalid_argument("unknown lattice kind '" + std::string(kind) +
                                    "' (expected cycle, square or triangular)");
    }
    if (modulus < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    return spec;
}

std::string LatticeSpec::str() const {
    std::string out;
    switch (kind) {
        case LatticeKind::cycle:
            out = "cycle:";
            break;
        case LatticeKind::square_torus:
            out = "square:";
            break;
        case LatticeKind::triangular_torus:
            out = "triangular:";
            break;
    }
    for (std::size_t k = 0; k < extents.size(); k++) {
        out += (k ? "x" : "") + std::to_string(extents[k]);
    }
    return out;
}

CellComplex LatticeSpec::build() const { return CellComplex::build(kind, extents, modulus); }

void validate(const ExperimentConfig &cfg) {
    auto fail = [](const std::string &field, const std::string &msg) {
        throw std::invalid_argument(field + ": " + msg);
    };
    if (!std::isfinite(cfg.t) || cfg.t < 0.0) {
        fail("t", "must be a finite non-negative number");
    }
    if (cfg.k < 1) {
        fail("k", "must be at least 1");
    }
    if (cfg.shots < 1) {
        fail("shots", "must be at least 1");
    }
    if (cfg.runs < 1) {
        fail("runs", "must be at least 1");
    }
    if (!(cfg.tolerance > 0.0)) {
        fail("tolerance", "must be positive");
    }
    if (cfg.k_list.empty() || std::any_of(cfg.k_list.begin(), cfg.k_list.end(), [](int k) { return k < 1; })) {
        fail("k_list", "needs at least one entry, all >= 1");
    }
    if (!(cfg.noise.strength >= 0.0 && cfg.noise.strength <= 1.0)) {
        fail("noise.strength", "must lie in [0, 1]");
    }
    CellComplex cx;
    try {
        cx = cfg.lattice.build();
    } catch (const std::exception &e) {
        fail("lattice", e.what());
    }
    RegisterLayout full;
    try {
        full = ancilla_layout(cfg.map, cx);
        full.dimension();
    } catch (const std::exception &e) {
        fail("map", e.what());
    }
    if (full.dimension() > kLabDimensionLimit) {
        fail("lattice", "full register dimension " + std::to_string(full.dimension()) + " exceeds the limit " +
                            std::to_string(kLabDimensionLimit));
    }
    try {
        build_model(map_source(cfg.map), cx, cfg.couplings);
        build_model(map_target(cfg.map), cx, cfg.couplings);
    } catch (const std::exception &e) {
        fail("couplings", e.what());
    }
    InitialKind init = cfg.initial.kind;
    if (is_string_map(cfg.map) && (init == InitialKind::zero || init == InitialKind::random)) {
        fail("initial", "map " + map_name(cfg.map) + " needs a symmetric input state; '" + initial_kind_name(init) +
                            "' is not symmetric");
    }
    if (init == InitialKind::levin_gu && cfg.map != MapId::kw_tri) {
        fail("initial", "levin_gu is defined on the triangular torus (map kw_tri) only");
    }
}

std::vector<StabilizerValue> stabilizer_check(const StateVector &state, const ModelSpec &model) {
    if (!(state.layout() == model.layout)) {
        throw std::invalid_argument("state layout does not match the model");
    }
    double n2 = state.norm_squared();
    if (n2 == 0.0) {
        throw std::domain_error("stabilizer check on a zero state");
    }
    std::vector<StabilizerValue> out;
    for (const auto &[name, term] : stabilizers(model)) {
        out.push_back({name, inner(state, apply_term(term, state)) / n2});
    }
    return out;
}

GaugeCheckReport gauge_check(const ExperimentConfig &cfg) {
    validate(cfg);
    GaugeCheckReport rep;
    rep.config = cfg;
    DualityMap map = make_map(cfg.map, cfg.lattice.build());
    StateVector psi = initial_state(cfg.initial, map);
    std::vector<int> zeros(map.source_layout.num_sites(), 0);
    DualityRun run = dualize_branch(psi, map, zeros);
    StateVector gauged = correct(run, map);
    rep.values = stabilizer_check(gauged, target_model(map, cfg.couplings));
    for (const auto &v : rep.values) {
        rep.max_deviation = std::max(rep.max_deviation, std::abs(v.expectation - 1.0));
    }
    return rep;
}

bool GaugeCheckReport::passed() const { return max_deviation < config.tolerance; }

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("LGT_DUAL_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<unsigned>(std::min<long>(v, 256));
        }
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn) {
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::size_t first_index = n;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mu);
                // Keep the lowest failing index so the error is reproducible.
                if (i < first_index) {
                    first_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back(work);
    }
    for (auto &th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_a), static_cast<std::uint32_t>(stream_a >> 32),
                      static_cast<std::uint32_t>(stream_b), static_cast<std::uint32_t>(stream_b >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) {
    return seeded_rng(seed, stream_a, stream_b)();
}

}  // namespace lgtdual
