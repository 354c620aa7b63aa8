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

#include <array>
#include <cmath>
#include <numeric>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "lgtdual/engine.h"

namespace lgtdual {

namespace {

struct SiteCoeff {
    std::size_t stride;
    int power;
};

// A term compiled against a concrete state: strides instead of site indices.
struct Kernel {
    int N = 2;
    int phase = 0;
    std::vector<SiteCoeff> shifts;
    std::vector<SiteCoeff> clocks;
    std::vector<std::vector<SiteCoeff>> twists;

    Kernel(const Term &term, const StateVector &psi) : N(psi.modulus()), phase(term.op.phase()) {
        const WeylString &op = term.op;
        if (op.size() != psi.num_sites() || op.modulus() != psi.modulus()) {
            throw std::invalid_argument("term does not act on this state's layout");
        }
        for (std::size_t j = 0; j < op.size(); j++) {
            if (op.x(j) != 0) {
                shifts.push_back({psi.stride(j), op.x(j)});
            }
            if (op.z(j) != 0) {
                clocks.push_back({psi.stride(j), op.z(j)});
            }
        }
        for (const auto &w : term.twists) {
            if (N != 2 || w.modulus() != 2 || w.size() != op.size() || !w.is_diagonal() || w.phase() != 0) {
                throw std::invalid_argument("twist factors must be phase-free qubit Z-strings");
            }
            std::vector<SiteCoeff> t;
            for (std::size_t j = 0; j < w.size(); j++) {
                if (w.z(j) != 0) {
                    t.push_back({psi.stride(j), 1});
                }
            }
            twists.push_back(std::move(t));
        }
    }

    int digit(std::size_t b, std::size_t stride) const {
        return static_cast<int>((b / stride) % static_cast<std::size_t>(N));
    }

    std::size_t shift(std::size_t b) const {
        for (const auto &s : shifts) {
            int d = digit(b, s.stride);
            int nd = (d + s.power) % N;
            b = b + static_cast<std::size_t>(nd) * s.stride - static_cast<std::size_t>(d) * s.stride;
        }
        return b;
    }

    // Phase exponent in units of e^{i pi / N}; a violated twist contributes
    // e^{i pi / 2}, which is one unit at N = 2.
    int phase_at(std::size_t b) const {
        long long e = phase;
        for (const auto &c : clocks) {
            e += 2LL * c.power * digit(b, c.stride);
        }
        for (const auto &t : twists) {
            int parity = 0;
            for (const auto &c : t) {
                parity ^= digit(b, c.stride);
            }
            e += parity;
        }
        long long m = 2LL * N;
        return static_cast<int>(((e % m) + m) % m);
    }

    // Length of every orbit of the shift.
    std::size_t orbit_length() const {
        int g = N;
        for (const auto &s : shifts) {
            g = std::gcd(g, s.power);
        }
        return static_cast<std::size_t>(N / g);
    }
};

std::complex<double> unit_phase(long long exponent, int N) {
    return std::polar(1.0, std::numbers::pi * static_cast<double>(exponent) / N);
}

}  // namespace

int term_phase(const Term &term, const StateVector &frame, std::size_t index) {
    return Kernel(term, frame).phase_at(index);
}

StateVector apply_term(const Term &term, const StateVector &psi) {
    Kernel k(term, psi);
    StateVector out = StateVector::zero_vector(psi.layout());
    for (std::size_t b = 0; b < psi.dimension(); b++) {
        std::size_t nb = k.shift(b);
        Amplitude f = unit_phase(k.phase_at(b), k.N);
        out[nb] += f * psi[b];
        if (term.hermitize) {
            // T^dagger sends nb back to b with the conjugate amplitude.
            out[b] += std::conj(f) * psi[nb];
        }
    }
    return out;
}

StateVector apply_weyl(const WeylString &op, const StateVector &psi) {
    return apply_term(Term{op, {}, false}, psi);
}

void apply_term_exp(StateVector &psi, const Term &term, double theta, TimeMode mode) {
    Kernel k(term, psi);
    if (!term.hermitize && term.twists.empty() && !term.op.is_hermitian()) {
        throw std::invalid_argument("exponent of a non-Hermitian string needs hermitize=true");
    }
    const int N = k.N;
    const std::size_t m = k.orbit_length();
    const Amplitude z = mode == TimeMode::real ? Amplitude{0.0, theta} : Amplitude{theta, 0.0};
    auto &amps = psi.amplitudes();

    // exp(zA) restricted to an orbit whose phase exponents sum to C, written
    // in the gauge where T is mu times the cyclic shift.
    std::vector<std::optional<std::vector<Amplitude>>> cache(static_cast<std::size_t>(2 * N));
    auto circulant = [&](int C) -> const std::vector<Amplitude> & {
        auto &slot = cache[static_cast<std::size_t>(C)];
        if (!slot) {
            double md = static_cast<double>(m);
            std::vector<Amplitude> a(m);
            for (std::size_t q = 0; q < m; q++) {
                Amplitude eig = std::polar(1.0, std::numbers::pi * C / (N * md) + 2.0 * std::numbers::pi * q / md);
                a[q] = term.hermitize ? eig + std::conj(eig) : eig;
                if (!term.hermitize && term.twists.empty() && std::abs(a[q].imag()) > 1e-9) {
                    throw std::invalid_argument("term has a non-real spectrum");
                }
            }
            std::vector<Amplitude> M(m);
            for (std::size_t d = 0; d < m; d++) {
                Amplitude acc = 0.0;
                for (std::size_t q = 0; q < m; q++) {
                    acc += std::exp(z * a[q]) * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(d * q) / md);
                }
                M[d] = acc / md;
            }
            slot = std::move(M);
        }
        return *slot;
    };

    if (m == 1) {
        for (std::size_t b = 0; b < amps.size(); b++) {
            amps[b] *= circulant(k.phase_at(b))[0];
        }
        return;
    }

    // Orbit representatives: either the pivot digit rule or a visited mask.
    const SiteCoeff pivot = k.shifts.front();
    const int pivot_gcd = std::gcd(pivot.power, N);
    const bool pivot_rule = static_cast<std::size_t>(N / pivot_gcd) == m;
    std::vector<char> visited;
    if (!pivot_rule) {
        visited.assign(amps.size(), 0);
    }

    std::vector<std::size_t> idx(m);
    std::vector<int> f(m);
    std::vector<Amplitude> g(m), u(m);
    const double md = static_cast<double>(m);
    for (std::size_t b0 = 0; b0 < amps.size(); b0++) {
        if (pivot_rule) {
            if (k.digit(b0, pivot.stride) >= pivot_gcd) {
                continue;
            }
        } else if (visited[b0]) {
            continue;
        }
        long long C = 0;
        std::size_t b = b0;
        for (std::size_t j = 0; j < m; j++) {
            idx[j] = b;
            if (!pivot_rule) {
                visited[b] = 1;
            }
            f[j] = k.phase_at(b);
            C += f[j];
            b = k.shift(b);
        }
        int Cm = static_cast<int>(C % (2 * N));
        const auto &M = circulant(Cm);
        // g_{j+1} = g_j f_j / mu with mu = e^{i pi C / (N m)}.
        g[0] = 1.0;
        double mu_angle = std::numbers::pi * Cm / (N * md);
        for (std::size_t j = 0; j + 1 < m; j++) {
            g[j + 1] = g[j] * std::polar(1.0, std::numbers::pi * f[j] / N - mu_angle);
        }
        bool any = false;
        for (std::size_t j = 0; j < m; j++) {
            u[j] = amps[idx[j]] / g[j];
            any |= u[j] != 0.0;
        }
        if (!any) {
            continue;
        }
        for (std::size_t j = 0; j < m; j++) {
            Amplitude acc = 0.0;
            for (std::size_t l = 0; l < m; l++) {
                acc += M[(j + m - l) % m] * u[l];
            }
            amps[idx[j]] = g[j] * acc;
        }
    }
}

ControlledGate ControlledGate::cx(std::size_t control, std::size_t target) {
    return {ControlledKind::cx, control, target, {}};
}

ControlledGate ControlledGate::cx_inverse(std::size_t control, std::size_t target) {
    return {ControlledKind::cx_inverse, control, target, {}};
}

ControlledGate ControlledGate::cs(std::size_t control, const FermionLayout &fermions, std::size_t hop) {
    ControlledGate g{ControlledKind::cs, control, fermions.mode_site(fermions.hop_minus(hop)), {}};
    g.payload = jw_encode(fermions, {BilinearKind::hopping, hop}, true);
    return g;
}

void apply_controlled(StateVector &psi, const ControlledGate &gate) {
    const int N = psi.modulus();
    if (gate.control >= psi.num_sites()) {
        throw std::out_of_range("control site outside layout");
    }
    const std::size_t cs = psi.stride(gate.control);
    auto &amps = psi.amplitudes();
    auto n = static_cast<std::size_t>(N);

    if (gate.kind == ControlledKind::cs) {
        const WeylString &p = gate.payload;
        if (p.size() != psi.num_sites() || p.modulus() != N) {
            throw std::invalid_argument("CS payload does not match the layout");
        }
        if (p.x(gate.control) != 0 || p.z(gate.control) != 0) {
            throw std::invalid_argument("control and target overlap");
        }
        Kernel k(Term{p, {}, false}, psi);
        std::vector<Amplitude> out(amps.size(), Amplitude{0.0, 0.0});
        for (std::size_t b = 0; b < amps.size(); b++) {
            int c = static_cast<int>((b / cs) % n);
            if (c == 0) {
                out[b] += amps[b];
                continue;
            }
            // The payload raised to the control digit.
            std::size_t cur = b;
            Amplitude a = amps[b];
            for (int r = 0; r < c; r++) {
                a *= unit_phase(k.phase_at(cur), N);
                cur = k.shift(cur);
            }
            out[cur] += a;
        }
        amps = std::move(out);
        return;
    }

    if (gate.target >= psi.num_sites()) {
        throw std::out_of_range("target site outside layout");
    }
    if (gate.target == gate.control) {
        throw std::invalid_argument("control and target overlap");
    }
    const std::size_t ts = psi.stride(gate.target);
    if (N == 2) {
        // In place: swap target pairs wherever the control bit is set.
        for (std::size_t b = 0; b < amps.size(); b++) {
            if ((b & cs) && !(b & ts)) {
                std::swap(amps[b], amps[b | ts]);
            }
        }
        return;
    }
    const int sign = gate.kind == ControlledKind::cx ? 1 : -1;
    std::vector<Amplitude> out(amps.size());
    for (std::size_t b = 0; b < amps.size(); b++) {
        int c = static_cast<int>((b / cs) % n);
        int t = static_cast<int>((b / ts) % n);
        int nt = ((t + sign * c) % N + N) % N;
        out[b + static_cast<std::size_t>(nt) * ts - static_cast<std::size_t>(t) * ts] = amps[b];
    }
    amps = std::move(out);
}

void apply_site_matrix(StateVector &psi, std::size_t site, const Eigen::MatrixXcd &u) {
    const auto n = static_cast<std::size_t>(psi.modulus());
    if (static_cast<std::size_t>(u.rows()) != n || static_cast<std::size_t>(u.cols()) != n) {
        throw std::invalid_argument("site matrix has the wrong size");
    }
    const std::size_t stride = psi.stride(site);
    auto &amps = psi.amplitudes();
    std::vector<Amplitude> in(n);
    for (std::size_t base = 0; base < amps.size(); base += stride * n) {
        for (std::size_t low = 0; low < stride; low++) {
            std::size_t i0 = base + low;
            for (std::size_t a = 0; a < n; a++) {
                in[a] = amps[i0 + a * stride];
            }
            for (std::size_t r = 0; r < n; r++) {
                Amplitude acc = 0.0;
                for (std::size_t a = 0; a < n; a++) {
                    acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) * in[a];
                }
                amps[i0 + r * stride] = acc;
            }
        }
    }
}

}  // namespace lgtdual
