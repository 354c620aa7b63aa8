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

#include "lgtdual/weyl.h"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lgtdual {

namespace {

int mod(long long a, int n) {
    long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

WeylString::WeylString(std::size_t num_sites, int modulus)
    : modulus_(modulus), phase_(0), x_(num_sites, 0), z_(num_sites, 0) {
    if (modulus < 2) {
        throw std::invalid_argument("Weyl strings need N >= 2");
    }
}

WeylString WeylString::x_at(std::size_t num_sites, int modulus, std::size_t site, int power) {
    WeylString w(num_sites, modulus);
    w.set_x(site, power);
    return w;
}

WeylString WeylString::z_at(std::size_t num_sites, int modulus, std::size_t site, int power) {
    WeylString w(num_sites, modulus);
    w.set_z(site, power);
    return w;
}

WeylString WeylString::from_pauli_text(std::string_view text) {
    int phase = 0;
    std::size_t k = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        phase += text[k] == '-' ? 2 : 0;
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase += 1;
        k++;
    }
    WeylString w(text.size() - k, 2);
    for (std::size_t j = 0; k < text.size(); k++, j++) {
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                w.x_[j] = 1;
                break;
            case 'Z':
                w.z_[j] = 1;
                break;
            case 'Y':
                w.x_[j] = 1;
                w.z_[j] = 1;
                phase += 1;
                break;
            default:
                throw std::invalid_argument("unexpected character in Pauli text");
        }
    }
    w.set_phase(phase);
    return w;
}

void WeylString::set_x(std::size_t j, int power) {
    x_.at(j) = mod(power, modulus_);
}

void WeylString::set_z(std::size_t j, int power) {
    z_.at(j) = mod(power, modulus_);
}

void WeylString::set_phase(int exponent) {
    phase_ = mod(exponent, 2 * modulus_);
}

void WeylString::add_phase(int exponent) {
    phase_ = mod(static_cast<long long>(phase_) + exponent, 2 * modulus_);
}

std::complex<double> WeylString::scalar() const {
    return std::polar(1.0, std::numbers::pi * phase_ / modulus_);
}

bool WeylString::is_identity() const {
    return phase_ == 0 && is_diagonal() && support().empty();
}

bool WeylString::is_diagonal() const {
    for (int a : x_) {
        if (a != 0) {
            return false;
        }
    }
    return true;
}

bool WeylString::is_hermitian() const {
    long long xz = 0;
    for (std::size_t j = 0; j < x_.size(); j++) {
        if (mod(-x_[j], modulus_) != x_[j] || mod(-z_[j], modulus_) != z_[j]) {
            return false;
        }
        xz += static_cast<long long>(x_[j]) * z_[j];
    }
    return mod(phase_ - xz, modulus_) == 0;
}

std::vector<std::size_t> WeylString::support() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < x_.size(); j++) {
        if (x_[j] != 0 || z_[j] != 0) {
            out.push_back(j);
        }
    }
    return out;
}

void WeylString::check_compatible(const WeylString &other) const {
    if (modulus_ != other.modulus_ || x_.size() != other.x_.size()) {
        throw std::invalid_argument("Weyl strings act on different site sets");
    }
}

WeylString &WeylString::operator*=(const WeylString &rhs) {
    check_compatible(rhs);
    // Z^a X^b = w^{ab} X^b Z^a, and w is two units of the phase exponent.
    long long cross = 0;
    for (std::size_t j = 0; j < x_.size(); j++) {
        cross += static_cast<long long>(z_[j]) * rhs.x_[j];
        x_[j] = mod(x_[j] + rhs.x_[j], modulus_);
        z_[j] = mod(z_[j] + rhs.z_[j], modulus_);
    }
    phase_ = mod(static_cast<long long>(phase_) + rhs.phase_ + 2 * cross, 2 * modulus_);
    return *this;
}

WeylString WeylString::operator*(const WeylString &rhs) const {
    WeylString r = *this;
    r *= rhs;
    return r;
}

WeylString WeylString::dagger() const {
    WeylString r(x_.size(), modulus_);
    long long xz = 0;
    for (std::size_t j = 0; j < x_.size(); j++) {
        r.x_[j] = mod(-x_[j], modulus_);
        r.z_[j] = mod(-z_[j], modulus_);
        xz += static_cast<long long>(x_[j]) * z_[j];
    }
    r.phase_ = mod(-static_cast<long long>(phase_) + 2 * xz, 2 * modulus_);
    return r;
}

WeylString WeylString::pow(int k) const {
    WeylString base = k >= 0 ? *this : dagger();
    WeylString r(x_.size(), modulus_);
    for (int n = k >= 0 ? k : -k; n > 0; n--) {
        r *= base;
    }
    return r;
}

int WeylString::apply_to_basis(std::vector<int> &digits) const {
    if (digits.size() != x_.size()) {
        throw std::invalid_argument("basis state has the wrong number of sites");
    }
    long long e = phase_;
    for (std::size_t j = 0; j < x_.size(); j++) {
        e += 2LL * z_[j] * digits[j];
        digits[j] = mod(digits[j] + x_[j], modulus_);
    }
    return mod(e, 2 * modulus_);
}

std::string WeylString::str() const {
    std::ostringstream out;
    if (modulus_ == 2) {
        // Stim-like text: sign, then one letter per site.
        int phase = phase_;
        std::string body;
        for (std::size_t j = 0; j < x_.size(); j++) {
            if (x_[j] && z_[j]) {
                body += 'Y';
                phase -= 1;
            } else {
                body += x_[j] ? 'X' : (z_[j] ? 'Z' : '_');
            }
        }
        phase = mod(phase, 4);
        out << ((phase == 2 || phase == 3) ? "-" : "+") << ((phase % 2) ? "i" : "") << body;
        return out.str();
    }
    out << "e^(i*pi*" << phase_ << "/" << modulus_ << ")";
    for (std::size_t j = 0; j < x_.size(); j++) {
        if (x_[j]) {
            out << " X" << j << "^" << x_[j];
        }
        if (z_[j]) {
            out << " Z" << j << "^" << z_[j];
        }
    }
    return out.str();
}

int commutation_phase(const WeylString &p, const WeylString &q) {
    if (p.modulus() != q.modulus() || p.size() != q.size()) {
        throw std::invalid_argument("Weyl strings act on different site sets");
    }
    long long k = 0;
    for (std::size_t j = 0; j < p.size(); j++) {
        k += static_cast<long long>(p.z(j)) * q.x(j) - static_cast<long long>(p.x(j)) * q.z(j);
    }
    return mod(k, p.modulus());
}

WeylString weyl_from_chain(
    PauliKind kind, const CellComplex &cx, const Chain &c, const RegisterLayout &layout, std::string_view reg) {
    const Register &r = layout.at(reg);
    if (c.modulus() != layout.modulus() || c.modulus() != cx.modulus()) {
        throw std::invalid_argument("chain modulus differs from the register");
    }
    if (r.grade != storage_grade(cx, c) || r.size != c.size()) {
        throw std::invalid_argument(
            "chain of stored grade " + std::to_string(storage_grade(cx, c)) + " does not fit register '" + r.name +
            "'");
    }
    WeylString w(layout.num_sites(), layout.modulus());
    for (std::size_t k = 0; k < c.size(); k++) {
        if (kind == PauliKind::x) {
            w.set_x(r.offset + k, c[k]);
        } else {
            w.set_z(r.offset + k, c[k]);
        }
    }
    return w;
}

}  // namespace lgtdual
