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

#ifndef LGTDUAL_LAB_H
#define LGTDUAL_LAB_H

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgtdual/dualizer.h"

namespace lgtdual {

/// "cycle:4", "square:2x2", "triangular:2x2" plus the site dimension.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::square_torus;
    std::vector<std::size_t> extents{2, 2};
    int modulus = 2;

    static LatticeSpec parse(std::string_view text, int modulus = 2);
    std::string str() const;
    CellComplex build() const;
};

enum class RunMode { exhaustive, sampled };
enum class InitialKind { plus, zero, random_symmetric, random, levin_gu };
enum class NoiseChannel { none, z_rotation, haar };

std::string run_mode_name(RunMode m);
RunMode parse_run_mode(std::string_view s);
std::string initial_kind_name(InitialKind k);
InitialKind parse_initial_kind(std::string_view s);
std::string noise_channel_name(NoiseChannel c);
NoiseChannel parse_noise_channel(std::string_view s);
std::string time_mode_name(TimeMode m);
TimeMode parse_time_mode(std::string_view s);

struct InitialStateSpec {
    InitialKind kind = InitialKind::plus;
    std::uint64_t seed = 0;
};

/// Single-site noise on the source register after every Trotter step.
/// z_rotation: each site gets exp(i phi (Z + Z^dagger)/2) with phi uniform in
/// [-p pi/2, p pi/2]. haar: with probability p a site gets a Haar-random
/// unitary.
struct NoiseSpec {
    NoiseChannel channel = NoiseChannel::none;
    double strength = 0.0;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    MapId map = MapId::kw;
    LatticeSpec lattice;
    Couplings couplings{1.0, 1.0, 1.0, 1.0};
    double t = 0.0;
    int k = 8;
    TimeMode time_mode = TimeMode::real;
    RunMode mode = RunMode::exhaustive;
    std::uint64_t seed = 0;
    int shots = 100;
    InitialStateSpec initial;
    NoiseSpec noise;
    /// Noise experiment repetitions.
    int runs = 1000;
    /// Step counts for convergence studies.
    std::vector<int> k_list{4, 8, 16, 32};
    PairingPolicy counter_policy = PairingPolicy::canonical;
    double tolerance = 1e-10;
    std::string output;
};

/// Throws std::invalid_argument with a field-level message.
void validate(const ExperimentConfig &cfg);

/// Initial state on the source register of the map.
StateVector initial_state(const InitialStateSpec &spec, const DualityMap &map);
/// prod_v (1 + O_v)/2 |+...+>, normalized, on a triangular torus.
StateVector levin_gu_state(const CellComplex &cx);
/// Averages a state over the global shift prod X_v and renormalizes.
StateVector symmetrize(const StateVector &psi);

/// Applies one noise layer to the given sites.
void apply_noise(StateVector &psi, const std::vector<std::size_t> &sites, const NoiseSpec &noise,
                 std::uint64_t layer_seed);

struct BranchResult {
    std::vector<int> outcomes;
    /// sum of outcomes mod N.
    int charge = 0;
    double weight = 0.0;
    bool success = false;
    /// Residuals are relative to the norm of the expected branch state.
    std::optional<double> residual;
    std::optional<double> residual_aligned;
    std::optional<double> byproduct_residual;
    std::optional<double> prefactor_deviation;
    std::optional<double> gauss_residual;
};

struct VerifyReport {
    ExperimentConfig config;
    std::vector<BranchResult> branches;
    std::size_t nonzero_branches = 0;
    double max_residual = 0.0;
    double max_residual_aligned = 0.0;
    double max_byproduct_residual = 0.0;
    double max_prefactor_deviation = 0.0;
    double max_gauss_residual = 0.0;
    /// sum of squared branch weights over ||T psi||^2 (exhaustive mode only).
    std::optional<double> weight_sum;
    /// Every nonzero branch is neutral (string maps with symmetric input).
    bool parity_ok = true;
    /// Imaginary time: norm growth of source and target evolutions.
    std::optional<double> source_growth;
    std::optional<double> target_growth;
    std::optional<double> growth_mismatch;

    bool passed() const;
};

VerifyReport verify_duality(const ExperimentConfig &cfg);

struct NoiseReport {
    ExperimentConfig config;
    int runs = 0;
    int successes = 0;
    double success_rate = 0.0;
    /// Binomial standard error of the success rate around 1/2.
    double sigma_half = 0.0;
    double max_gauss_residual = 0.0;
    double max_loop_residual = 0.0;
    std::vector<int> charges;

    bool passed() const;
    /// Success rate within 5 sigma of 1/2.
    bool near_half() const;
};

NoiseReport noise_experiment(const ExperimentConfig &cfg);

struct ConvergenceRow {
    int k = 0;
    double duality_residual = 0.0;
    double source_error = 0.0;
    double target_error = 0.0;
};

struct ConvergenceReport {
    ExperimentConfig config;
    std::vector<ConvergenceRow> rows;
    /// Error ratios between consecutive rows (k doubling).
    std::vector<double> source_ratios;
    std::vector<double> target_ratios;

    bool passed() const;
    std::string csv() const;
};

ConvergenceReport trotter_convergence(const ExperimentConfig &cfg);

struct StabilizerValue {
    std::string name;
    std::complex<double> expectation;
};

/// <g> for every gauge generator and, for gt/tgt, every magnetic term.
std::vector<StabilizerValue> stabilizer_check(const StateVector &state, const ModelSpec &model);

struct GaugeCheckReport {
    ExperimentConfig config;
    std::vector<StabilizerValue> values;
    double max_deviation = 0.0;

    bool passed() const;
};

/// Gauges the initial state at t = 0 (all-zero branch) and checks every
/// stabilizer of the target model.
GaugeCheckReport gauge_check(const ExperimentConfig &cfg);

struct ReplacementReport {
    MapId map = MapId::kw;
    std::string lattice;
    int configurations = 0;
    int checks = 0;
    double max_residual = 0.0;
};

/// Z on the measured register next to the X-products generated by the
/// conjugated X terms acts like the dual Z on the ancillas, on states
/// |c; ancillas(c)>. Random Lambda subsets and random c.
ReplacementReport replacement_check(MapId map, const CellComplex &cx, int configurations, std::uint64_t seed);

/// Largest full-register dimension the harnesses accept.
constexpr std::size_t kLabDimensionLimit = std::size_t{1} << 22;

/// Worker count from LGT_DUAL_THREADS (default: hardware concurrency).
unsigned worker_count();
/// Runs fn(i) for i in [0, n) on worker threads; each index is independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

}  // namespace lgtdual

#endif
