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
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lgtdual/engine.h"

namespace lgtdual {

StateVector::StateVector(RegisterLayout layout) : layout_(std::move(layout)) {
    amps_.assign(layout_.dimension(), Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.dimension()) {
        throw std::invalid_argument("amplitude count does not match the layout");
    }
}

StateVector StateVector::basis(RegisterLayout layout, const std::vector<int> &digits) {
    StateVector s = zero_vector(std::move(layout));
    s.amps_[s.index_of(digits)] = 1.0;
    return s;
}

StateVector StateVector::zero_vector(RegisterLayout layout) {
    StateVector s(std::move(layout));
    s.amps_[0] = 0.0;
    return s;
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::norm() const {
    return std::sqrt(norm_squared());
}

void StateVector::normalize() {
    double n = norm();
    if (!(n > 0.0)) {
        throw std::domain_error("cannot normalize a zero state");
    }
    scale(1.0 / n);
}

void StateVector::scale(Amplitude factor) {
    for (auto &a : amps_) {
        a *= factor;
    }
}

std::size_t StateVector::stride(std::size_t site) const {
    if (site >= num_sites()) {
        throw std::out_of_range("site outside layout");
    }
    std::size_t s = 1;
    for (std::size_t k = 0; k < site; k++) {
        s *= static_cast<std::size_t>(modulus());
    }
    return s;
}

int StateVector::digit(std::size_t index, std::size_t site) const {
    return static_cast<int>((index / stride(site)) % static_cast<std::size_t>(modulus()));
}

std::vector<int> StateVector::digits(std::size_t index) const {
    std::vector<int> out(num_sites());
    auto N = static_cast<std::size_t>(modulus());
    for (auto &d : out) {
        d = static_cast<int>(index % N);
        index /= N;
    }
    return out;
}

std::size_t StateVector::index_of(const std::vector<int> &digits) const {
    if (digits.size() != num_sites()) {
        throw std::invalid_argument("digit count does not match the layout");
    }
    std::size_t index = 0;
    for (std::size_t k = digits.size(); k-- > 0;) {
        int d = digits[k];
        if (d < 0 || d >= modulus()) {
            throw std::out_of_range("digit outside 0..N-1");
        }
        index = index * static_cast<std::size_t>(modulus()) + static_cast<std::size_t>(d);
    }
    return index;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    if (!(layout_ == other.layout_)) {
        throw std::invalid_argument("adding states on different layouts");
    }
    for (std::size_t k = 0; k < amps_.size(); k++) {
        amps_[k] += other.amps_[k];
    }
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    if (!(layout_ == other.layout_)) {
        throw std::invalid_argument("subtracting states on different layouts");
    }
    for (std::size_t k = 0; k < amps_.size(); k++) {
        amps_[k] -= other.amps_[k];
    }
    return *this;
}

Amplitude inner(const StateVector &a, const StateVector &b) {
    if (!(a.layout() == b.layout())) {
        throw std::invalid_argument("inner product of states on different layouts");
    }
    Amplitude s = 0.0;
    for (std::size_t k = 0; k < a.dimension(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double distance(const StateVector &a, const StateVector &b) {
    if (!(a.layout() == b.layout())) {
        throw std::invalid_argument("distance between states on different layouts");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.dimension(); k++) {
        s += std::norm(a[k] - b[k]);
    }
    return std::sqrt(s);
}

double aligned_distance(const StateVector &a, const StateVector &b) {
    Amplitude ov = inner(b, a);
    Amplitude rot = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Amplitude{1.0, 0.0};
    double s = 0.0;
    for (std::size_t k = 0; k < a.dimension(); k++) {
        s += std::norm(a[k] - rot * b[k]);
    }
    return std::sqrt(s);
}

namespace {

void check_sites(const StateVector &psi, const std::vector<std::size_t> &sites) {
    std::vector<std::size_t> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("repeated site in measurement");
    }
    if (!sorted.empty() && sorted.back() >= psi.num_sites()) {
        throw std::out_of_range("measured site outside layout");
    }
}

// <s~|a> = w^{as} / sqrt(N), applied to one site.
void fourier_site(std::vector<Amplitude> &amps, std::size_t stride, int N) {
    std::vector<Amplitude> w(static_cast<std::size_t>(N));
    for (int k = 0; k < N; k++) {
        w[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / N);
    }
    double inv = 1.0 / std::sqrt(static_cast<double>(N));
    auto n = static_cast<std::size_t>(N);
    std::vector<Amplitude> in(n);
    std::size_t block = stride * n;
    for (std::size_t base = 0; base < amps.size(); base += block) {
        for (std::size_t low = 0; low < stride; low++) {
            std::size_t i0 = base + low;
            for (std::size_t a = 0; a < n; a++) {
                in[a] = amps[i0 + a * stride];
            }
            for (std::size_t s = 0; s < n; s++) {
                Amplitude acc = 0.0;
                for (std::size_t a = 0; a < n; a++) {
                    acc += w[(a * s) % n] * in[a];
                }
                amps[i0 + s * stride] = acc * inv;
            }
        }
    }
}

}  // namespace

XBasisBranches::XBasisBranches(const StateVector &psi, std::vector<std::size_t> sites)
    : rotated_(psi), sites_(std::move(sites)) {
    check_sites(psi, sites_);
    const int N = psi.modulus();
    for (auto s : sites_) {
        fourier_site(rotated_.amplitudes(), psi.stride(s), N);
    }
    rest_ = psi.layout().without(sites_);
    auto n = static_cast<std::size_t>(N);
    for (std::size_t k = 0; k < sites_.size(); k++) {
        count_ *= n;
    }
    // Offsets of every outcome pattern and every remaining-site pattern.
    outcome_offset_.assign(count_, 0);
    for (std::size_t k = 0; k < count_; k++) {
        std::size_t rem = k;
        std::size_t off = 0;
        for (auto s : sites_) {
            off += (rem % n) * psi.stride(s);
            rem /= n;
        }
        outcome_offset_[k] = off;
    }
    std::vector<std::size_t> kept;
    std::vector<bool> measured(psi.num_sites(), false);
    for (auto s : sites_) {
        measured[s] = true;
    }
    for (std::size_t s = 0; s < psi.num_sites(); s++) {
        if (!measured[s]) {
            kept.push_back(s);
        }
    }
    std::size_t rest_dim = rest_.dimension();
    rest_offset_.assign(rest_dim, 0);
    for (std::size_t r = 0; r < rest_dim; r++) {
        std::size_t rem = r;
        std::size_t off = 0;
        for (auto s : kept) {
            off += (rem % n) * psi.stride(s);
            rem /= n;
        }
        rest_offset_[r] = off;
    }
}

std::vector<int> XBasisBranches::outcomes_of(std::size_t k) const {
    auto n = static_cast<std::size_t>(rotated_.modulus());
    std::vector<int> out(sites_.size());
    for (auto &d : out) {
        d = static_cast<int>(k % n);
        k /= n;
    }
    return out;
}

std::size_t XBasisBranches::branch_index(const std::vector<int> &outcomes) const {
    if (outcomes.size() != sites_.size()) {
        throw std::invalid_argument("one outcome per measured site expected");
    }
    auto n = static_cast<std::size_t>(rotated_.modulus());
    std::size_t k = 0;
    for (std::size_t j = outcomes.size(); j-- > 0;) {
        if (outcomes[j] < 0 || outcomes[j] >= rotated_.modulus()) {
            throw std::out_of_range("outcome outside 0..N-1");
        }
        k = k * n + static_cast<std::size_t>(outcomes[j]);
    }
    return k;
}

StateVector XBasisBranches::branch(std::size_t k) const {
    if (k >= count_) {
        throw std::out_of_range("branch index out of range");
    }
    std::vector<Amplitude> out(rest_offset_.size());
    std::size_t off = outcome_offset_[k];
    for (std::size_t r = 0; r < out.size(); r++) {
        out[r] = rotated_[off + rest_offset_[r]];
    }
    return StateVector(rest_, std::move(out));
}

double XBasisBranches::probability(std::size_t k) const {
    if (k >= count_) {
        throw std::out_of_range("branch index out of range");
    }
    double p = 0.0;
    std::size_t off = outcome_offset_[k];
    for (auto r : rest_offset_) {
        p += std::norm(rotated_[off + r]);
    }
    return p;
}

StateVector project_x(
    const StateVector &psi, const std::vector<std::size_t> &sites, const std::vector<int> &outcomes) {
    XBasisBranches branches(psi, sites);
    return branches.branch(branches.branch_index(outcomes));
}

std::size_t XBasisBranches::sample(std::uint64_t seed) const {
    double total = 0.0;
    for (std::size_t k = 0; k < count_; k++) {
        total += probability(k);
    }
    if (!(total > 0.0)) {
        throw std::domain_error("cannot measure a zero state");
    }
    std::mt19937_64 rng(seed);
    double u = std::generate_canonical<double, 53>(rng) * total;
    std::size_t pick = count_ - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < count_; k++) {
        double p = probability(k);
        acc += p;
        if (u < acc && p > 0.0) {
            pick = k;
            break;
        }
    }
    // Guard against rounding at the top end landing on a zero branch.
    while (probability(pick) == 0.0 && pick > 0) {
        pick--;
    }
    return pick;
}

MeasurementResult measure_x(const StateVector &psi, const std::vector<std::size_t> &sites, std::uint64_t seed) {
    double total = psi.norm_squared();
    if (!(total > 0.0)) {
        throw std::domain_error("cannot measure a zero state");
    }
    XBasisBranches branches(psi, sites);
    std::size_t pick = branches.sample(seed);
    MeasurementResult r;
    r.outcomes = branches.outcomes_of(pick);
    r.state = branches.branch(pick);
    r.probability = branches.probability(pick) / total;
    r.state.normalize();
    return r;
}

CircuitResult run_circuit(StateVector psi, const std::vector<GateStep> &steps, std::uint64_t seed) {
    CircuitResult result;
    std::uint64_t draw = seed;
    for (const auto &step : steps) {
        if (const auto *te = std::get_if<TermExponential>(&step)) {
            apply_term_exp(psi, te->term, te->angle);
        } else if (const auto *cg = std::get_if<ControlledGate>(&step)) {
            apply_controlled(psi, *cg);
        } else if (const auto *ms = std::get_if<MeasureStep>(&step)) {
            auto m = measure_x(psi, ms->sites, draw++);
            result.outcomes.insert(result.outcomes.end(), m.outcomes.begin(), m.outcomes.end());
            psi = std::move(m.state);
        } else if (const auto *ps = std::get_if<ProjectStep>(&step)) {
            psi = project_x(psi, ps->sites, ps->outcomes);
        }
    }
    result.state = std::move(psi);
    return result;
}

void write_state(std::ostream &out, const StateVector &psi) {
    static_assert(std::endian::native == std::endian::little, "blob format assumes a little-endian host");
    nlohmann::ordered_json header;
    header["format"] = "lgtdual-state";
    header["version"] = 1;
    header["modulus"] = psi.modulus();
    header["dimension"] = psi.dimension();
    header["norm"] = psi.norm();
    auto regs = nlohmann::ordered_json::array();
    for (const auto &r : psi.layout().registers()) {
        regs.push_back({{"name", r.name}, {"size", r.size}, {"grade", r.grade}, {"fermionic", r.fermionic}});
    }
    header["registers"] = regs;
    out << header.dump() << "\n";
    for (const auto &a : psi.amplitudes()) {
        double pair[2] = {a.real(), a.imag()};
        out.write(reinterpret_cast<const char *>(pair), sizeof(pair));
    }
    if (!out) {
        throw std::runtime_error("failed to write state blob");
    }
}

StateVector read_state(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("missing state header");
    }
    auto header = nlohmann::json::parse(line);
    if (header.at("format") != "lgtdual-state" || header.at("version") != 1) {
        throw std::runtime_error("unrecognized state blob");
    }
    RegisterLayout layout(header.at("modulus").get<int>());
    for (const auto &r : header.at("registers")) {
        layout.add(r.at("name").get<std::string>(), r.at("size").get<std::size_t>(), r.at("grade").get<int>(),
                   r.at("fermionic").get<bool>());
    }
    if (layout.dimension() != header.at("dimension").get<std::size_t>()) {
        throw std::runtime_error("state header dimension mismatch");
    }
    std::vector<Amplitude> amps(layout.dimension());
    for (auto &a : amps) {
        double pair[2];
        in.read(reinterpret_cast<char *>(pair), sizeof(pair));
        if (!in) {
            throw std::runtime_error("truncated state blob");
        }
        a = {pair[0], pair[1]};
    }
    return StateVector(std::move(layout), std::move(amps));
}

}  // namespace lgtdual
