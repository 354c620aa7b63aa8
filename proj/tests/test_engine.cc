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

#include "lgtdual/engine.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "gtest/gtest.h"

using namespace lgtdual;

namespace {

using Mat = Eigen::MatrixXcd;
const std::complex<double> I1(0.0, 1.0);

RegisterLayout flat(std::size_t n, int N) {
    RegisterLayout l(N);
    l.add("q", n, -1);
    return l;
}

StateVector random_state(const RegisterLayout &layout, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> a(layout.dimension());
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    StateVector s(layout, a);
    s.normalize();
    return s;
}

Eigen::VectorXcd as_vector(const StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t k = 0; k < s.dimension(); k++) {
        v(static_cast<Eigen::Index>(k)) = s[k];
    }
    return v;
}

double vec_distance(const StateVector &s, const Eigen::VectorXcd &v) {
    return (as_vector(s) - v).norm();
}

WeylString random_string(std::size_t n, int N, std::mt19937_64 &rng) {
    WeylString w(n, N);
    for (std::size_t j = 0; j < n; j++) {
        w.set_x(j, static_cast<int>(rng() % static_cast<unsigned>(N)));
        w.set_z(j, static_cast<int>(rng() % static_cast<unsigned>(N)));
    }
    w.set_phase(static_cast<int>(rng() % static_cast<unsigned>(2 * N)));
    return w;
}

}  // namespace

TEST(engine, single_qubit_exponentials) {
    double th = 0.37;
    StateVector s(flat(1, 2));
    apply_term_exp(s, Term{WeylString::from_pauli_text("Z")}, th);
    EXPECT_NEAR(std::abs(s[0] - std::polar(1.0, th)), 0.0, 1e-15);
    EXPECT_EQ(s[1], 0.0);

    StateVector t(flat(1, 2));
    apply_term_exp(t, Term{WeylString::from_pauli_text("X")}, th);
    EXPECT_NEAR(std::abs(t[0] - std::cos(th)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t[1] - I1 * std::sin(th)), 0.0, 1e-15);
}

TEST(engine, qutrit_hermitized_clock) {
    double th = 0.81;
    for (int s = 0; s < 3; s++) {
        StateVector psi = StateVector::basis(flat(1, 3), {s});
        apply_term_exp(psi, Term{WeylString::z_at(1, 3, 0), {}, true}, th);
        auto want = std::exp(I1 * 2.0 * th * std::cos(2.0 * std::numbers::pi * s / 3.0));
        EXPECT_NEAR(std::abs(psi[static_cast<std::size_t>(s)] - want), 0.0, 1e-14);
        EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
    }
}

TEST(engine, non_hermitian_rejected) {
    StateVector psi(flat(1, 3));
    EXPECT_THROW(apply_term_exp(psi, Term{WeylString::z_at(1, 3, 0)}, 0.1), std::invalid_argument);
    StateVector q(flat(1, 2));
    EXPECT_THROW(apply_term_exp(q, Term{WeylString::from_pauli_text("iX")}, 0.1), std::invalid_argument);
    EXPECT_NO_THROW(apply_term_exp(q, Term{WeylString::from_pauli_text("iX"), {}, true}, 0.1));
}

TEST(engine, term_exp_matches_dense_exponential) {
    std::mt19937_64 rng(21);
    for (int N : {2, 3, 4}) {
        std::size_t n = N == 2 ? 6 : (N == 3 ? 4 : 3);
        auto layout = flat(n, N);
        for (int trial = 0; trial < 40; trial++) {
            WeylString w = random_string(n, N, rng);
            bool herm = !w.is_hermitian();
            if (N == 2 && !herm) {
                herm = trial % 2 == 0;
            }
            Term term{w, {}, herm};
            double th = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
            StateVector psi = random_state(layout, rng);
            Mat A = dense_matrix(w);
            if (herm) {
                A = A + A.adjoint().eval();
            }
            Eigen::VectorXcd want = (I1 * th * A).exp() * as_vector(psi);
            apply_term_exp(psi, term, th);
            ASSERT_LT(vec_distance(psi, want), 1e-12) << w.str();
            Eigen::VectorXcd before = as_vector(psi);
            apply_term_exp(psi, term, th, TimeMode::imaginary);
            ASSERT_LT(vec_distance(psi, (th * A).exp() * before), 1e-10 * before.norm() * std::exp(std::abs(th) * A.norm()));
        }
    }
}

TEST(engine, twisted_term_matches_dense) {
    // X_0 e^{i pi/4 (1 - Z_1 Z_2)} e^{i pi/4 (1 - Z_2 Z_3)} style terms.
    std::mt19937_64 rng(4);
    auto layout = flat(4, 2);
    Term term{WeylString::from_pauli_text("X___"),
              {WeylString::from_pauli_text("_ZZ_"), WeylString::from_pauli_text("__ZZ")}, false};
    Mat D = Mat::Identity(16, 16);
    for (const auto &w : term.twists) {
        Mat W = dense_matrix(w);
        D = D * (std::numbers::pi / 4.0 * I1 * (Mat::Identity(16, 16) - W)).exp();
    }
    Mat T = dense_matrix(term.op) * D;
    EXPECT_LT((dense_matrix(term, layout) - T).norm(), 1e-12);
    for (bool herm : {false, true}) {
        term.hermitize = herm;
        Mat A = herm ? Mat(T + T.adjoint()) : T;
        StateVector psi = random_state(layout, rng);
        Eigen::VectorXcd want = (I1 * 0.4 * A).exp() * as_vector(psi);
        apply_term_exp(psi, term, 0.4);
        EXPECT_LT(vec_distance(psi, want), 1e-12);
    }
}

TEST(engine, norm_drift_over_many_gates) {
    std::mt19937_64 rng(8);
    auto layout = flat(6, 2);
    StateVector psi = random_state(layout, rng);
    for (int k = 0; k < 1000; k++) {
        WeylString w = random_string(6, 2, rng);
        apply_term_exp(psi, Term{w, {}, !w.is_hermitian()}, 0.3 + 0.001 * k);
    }
    EXPECT_LT(std::abs(psi.norm() - 1.0), 1e-12);
}

TEST(engine, controlled_gates) {
    auto l2 = flat(2, 2);
    StateVector s = StateVector::basis(l2, {1, 0});
    apply_controlled(s, ControlledGate::cx(0, 1));
    EXPECT_EQ(s[s.index_of({1, 1})], 1.0);

    auto l3 = flat(2, 3);
    for (int b = 0; b < 3; b++) {
        StateVector t = StateVector::basis(l3, {2, b});
        apply_controlled(t, ControlledGate::cx_inverse(0, 1));
        EXPECT_EQ(t[t.index_of({2, ((b - 2) % 3 + 3) % 3})], 1.0);
        StateVector u = StateVector::basis(l3, {2, b});
        apply_controlled(u, ControlledGate::cx(0, 1));
        EXPECT_EQ(u[u.index_of({2, (b + 2) % 3})], 1.0);
    }
    EXPECT_THROW(apply_controlled(s, ControlledGate::cx(1, 1)), std::invalid_argument);
}

TEST(engine, controlled_hopping) {
    // Site 0 is the control, sites 1..4 the fermion modes.
    FermionLayout f({1, 2, 3, 4}, 5, 2);
    std::mt19937_64 rng(2);
    auto layout = flat(5, 2);
    for (std::size_t hop = 0; hop < 4; hop++) {
        StateVector psi = random_state(layout, rng);
        StateVector gated = psi;
        apply_controlled(gated, ControlledGate::cs(0, f, hop));
        // Reference: |0><0| (x) 1 + |1><1| (x) S.
        Mat P1 = Mat::Zero(32, 32);
        for (int b = 0; b < 32; b++) {
            if (b & 1) {
                P1(b, b) = 1.0;
            }
        }
        Mat S = dense_matrix(jw_encode(f, {BilinearKind::hopping, hop}));
        Mat U = (Mat::Identity(32, 32) - P1) + P1 * S;
        EXPECT_LT(vec_distance(gated, U * as_vector(psi)), 1e-12);
        if (hop != 0) {
            WeylString xx(5, 2);
            xx.set_x(hop, 1);
            xx.set_x(hop + 1, 1);
            EXPECT_EQ(jw_encode(f, {BilinearKind::hopping, hop}), xx);
        }
    }
    ControlledGate bad = ControlledGate::cs(1, f, 1);
    StateVector psi(layout);
    EXPECT_THROW(apply_controlled(psi, bad), std::invalid_argument);
}

TEST(engine, measure_x_examples) {
    auto l1 = flat(1, 2);
    StateVector minus(l1, {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        auto m = measure_x(minus, {0}, seed);
        EXPECT_EQ(m.outcomes, (std::vector<int>{1}));
        EXPECT_NEAR(m.probability, 1.0, 1e-12);
    }
    auto l4 = flat(4, 2);
    std::vector<Amplitude> plus(16, 0.25);
    StateVector p(l4, plus);
    auto m = measure_x(p, {0, 1, 2, 3}, 5);
    EXPECT_EQ(m.outcomes, (std::vector<int>{0, 0, 0, 0}));
    EXPECT_THROW(measure_x(StateVector::zero_vector(l1), {0}, 1), std::domain_error);
}

TEST(engine, symmetric_states_give_even_parity) {
    std::mt19937_64 rng(12);
    auto layout = flat(6, 2);
    for (int sample = 0; sample < 1000; sample++) {
        StateVector psi = random_state(layout, rng);
        // (1 + prod X) / 2.
        StateVector flipped = apply_weyl(WeylString::from_pauli_text("XXXXXX"), psi);
        psi += flipped;
        psi.normalize();
        auto m = measure_x(psi, {0, 1, 2, 3, 4, 5}, rng());
        int parity = 0;
        for (int s : m.outcomes) {
            parity ^= s;
        }
        ASSERT_EQ(parity, 0);
    }
}

TEST(engine, measurement_statistics) {
    std::mt19937_64 rng(99);
    auto layout = flat(3, 3);
    StateVector psi = random_state(layout, rng);
    XBasisBranches branches(psi, {0, 2});
    std::vector<int> counts(branches.count(), 0);
    const int shots = 10000;
    for (int k = 0; k < shots; k++) {
        auto m = measure_x(psi, {0, 2}, static_cast<std::uint64_t>(k));
        counts[branches.branch_index(m.outcomes)]++;
        EXPECT_EQ(m.state.num_sites(), 1u);
    }
    for (std::size_t k = 0; k < branches.count(); k++) {
        double p = branches.probability(k);
        double sigma = std::sqrt(shots * p * (1 - p));
        EXPECT_LT(std::abs(counts[k] - shots * p), 5 * sigma + 1e-9);
    }
}

TEST(engine, projection_weights) {
    StateVector plus(flat(1, 2), {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    StateVector b = project_x(plus, {0}, {0});
    EXPECT_EQ(b.dimension(), 1u);
    EXPECT_NEAR(std::abs(b[0]), 1.0, 1e-15);
    StateVector zero(flat(1, 2));
    EXPECT_NEAR(std::abs(project_x(zero, {0}, {0})[0]), 1.0 / std::sqrt(2.0), 1e-15);

    std::mt19937_64 rng(1);
    auto layout = flat(4, 3);
    StateVector psi = random_state(layout, rng);
    psi.scale(1.7);
    XBasisBranches branches(psi, {3, 1});
    double total = 0.0;
    for (std::size_t k = 0; k < branches.count(); k++) {
        StateVector br = branches.branch(k);
        EXPECT_NEAR(br.norm_squared(), branches.probability(k), 1e-14);
        EXPECT_LT(distance(br, project_x(psi, {3, 1}, branches.outcomes_of(k))), 1e-15);
        total += br.norm_squared();
    }
    EXPECT_NEAR(total, psi.norm_squared(), 1e-12);
}

TEST(engine, entangled_symmetric_state_has_no_odd_branches) {
    // 1D ring of 4 vertices (sites 0..3) and 4 edges (sites 4..7); each vertex
    // controls its two incident edges.
    std::mt19937_64 rng(6);
    RegisterLayout layout(2);
    layout.add("v", 4, 0);
    auto vl = layout;
    layout.add("e", 4, 1);
    for (int trial = 0; trial < 5; trial++) {
        StateVector psi = random_state(vl, rng);
        psi += apply_weyl(WeylString::from_pauli_text("XXXX"), psi);
        std::vector<Amplitude> amps = psi.amplitudes();
        amps.resize(layout.dimension(), 0.0);
        StateVector full(layout, amps);
        for (std::size_t v = 0; v < 4; v++) {
            apply_controlled(full, ControlledGate::cx(v, 4 + (v + 3) % 4));
            apply_controlled(full, ControlledGate::cx(v, 4 + v));
        }
        XBasisBranches branches(full, {0, 1, 2, 3});
        for (std::size_t k = 0; k < branches.count(); k++) {
            auto s = branches.outcomes_of(k);
            int parity = s[0] ^ s[1] ^ s[2] ^ s[3];
            if (parity) {
                EXPECT_LT(branches.probability(k), 1e-28);
            }
        }
    }
}

TEST(engine, exact_evolve_examples) {
    std::mt19937_64 rng(3);
    auto layout = flat(3, 2);
    StateVector psi = random_state(layout, rng);
    EXPECT_LT(distance(exact_evolve(psi, {}, 1.3), psi), 1e-14);
    StateVector a = exact_evolve(psi, {{Term{WeylString::from_pauli_text("Z__")}, -1.0}}, 0.9);
    StateVector b = psi;
    apply_term_exp(b, Term{WeylString::from_pauli_text("Z__")}, 0.9);
    EXPECT_LT(distance(a, b), 1e-13);
    StateVector big(flat(15, 2));
    EXPECT_THROW(exact_evolve(big, {}, 1.0), std::length_error);
    EXPECT_THROW(exact_evolve(psi, {{Term{WeylString::from_pauli_text("iX__")}, 1.0}}, 1.0), std::invalid_argument);
}

TEST(engine, state_blob_round_trip) {
    std::mt19937_64 rng(15);
    RegisterLayout layout(3);
    layout.add("gauge", 2, 0).add("matter", 2, 1, true);
    StateVector psi = random_state(layout, rng);
    psi.scale(0.5);
    std::stringstream buf;
    write_state(buf, psi);
    StateVector back = read_state(buf);
    EXPECT_EQ(back.layout(), psi.layout());
    EXPECT_EQ(back.amplitudes(), psi.amplitudes());
    std::stringstream bad("{\"format\":\"other\",\"version\":1}\n");
    EXPECT_THROW(read_state(bad), std::runtime_error);
}

TEST(engine, circuit_steps) {
    auto layout = flat(2, 2);
    std::vector<GateStep> steps = {
        TermExponential{Term{WeylString::from_pauli_text("Y_")}, std::numbers::pi / 4},
        ControlledGate::cx(0, 1),
        MeasureStep{{0}},
    };
    auto r = run_circuit(StateVector(layout), steps, 4);
    ASSERT_EQ(r.outcomes.size(), 1u);
    EXPECT_EQ(r.state.num_sites(), 1u);
    EXPECT_NEAR(r.state.norm(), 1.0, 1e-14);
    std::vector<GateStep> proj = {ProjectStep{{1}, {0}}};
    auto q = run_circuit(StateVector(layout), proj, 0);
    EXPECT_NEAR(q.state.norm(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(engine, site_matrix_and_layout_checks) {
    StateVector psi(flat(2, 2));
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    apply_site_matrix(psi, 1, h);
    EXPECT_NEAR(std::abs(psi[2] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_THROW(apply_site_matrix(psi, 1, Mat::Identity(3, 3)), std::invalid_argument);
    EXPECT_THROW(StateVector(flat(2, 2), std::vector<Amplitude>(3)), std::invalid_argument);
    EXPECT_THROW(apply_term_exp(psi, Term{WeylString::from_pauli_text("X")}, 0.1), std::invalid_argument);
}
