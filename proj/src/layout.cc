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

#include "lgtdual/layout.h"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lgtdual {

RegisterLayout::RegisterLayout(int modulus) : modulus_(modulus) {
    if (modulus < 2) {
        throw std::invalid_argument("site dimension must be at least 2");
    }
}

RegisterLayout &RegisterLayout::add(std::string name, std::size_t size, int grade, bool fermionic) {
    if (contains(name)) {
        throw std::invalid_argument("duplicate register name '" + name + "'");
    }
    registers_.push_back({std::move(name), num_sites_, size, grade, fermionic});
    num_sites_ += size;
    return *this;
}

std::size_t RegisterLayout::dimension() const {
    std::size_t d = 1;
    for (std::size_t k = 0; k < num_sites_; k++) {
        if (d > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(modulus_)) {
            throw std::overflow_error("state dimension overflows");
        }
        d *= static_cast<std::size_t>(modulus_);
    }
    return d;
}

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(), [&](const Register &r) { return r.name == name; });
}

const Register &RegisterLayout::at(std::string_view name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw std::out_of_range("no register named '" + std::string(name) + "'");
}

std::size_t RegisterLayout::site(std::string_view name, std::size_t cell) const {
    const auto &r = at(name);
    if (cell >= r.size) {
        throw std::out_of_range("cell index outside register '" + r.name + "'");
    }
    return r.offset + cell;
}

std::vector<std::size_t> RegisterLayout::sites_of(std::string_view name) const {
    const auto &r = at(name);
    std::vector<std::size_t> out(r.size);
    for (std::size_t k = 0; k < r.size; k++) {
        out[k] = r.offset + k;
    }
    return out;
}

RegisterLayout RegisterLayout::without(const std::vector<std::size_t> &sites) const {
    std::set<std::size_t> drop(sites.begin(), sites.end());
    if (!drop.empty() && *drop.rbegin() >= num_sites_) {
        throw std::out_of_range("site outside layout");
    }
    RegisterLayout out(modulus_);
    for (const auto &r : registers_) {
        std::size_t kept = 0;
        for (std::size_t k = 0; k < r.size; k++) {
            kept += drop.count(r.offset + k) ? 0 : 1;
        }
        if (kept == 0) {
            continue;
        }
        out.add(r.name, kept, kept == r.size ? r.grade : -1, r.fermionic);
    }
    return out;
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &other) const {
    if (other.modulus_ != modulus_) {
        throw std::invalid_argument("cannot join layouts with different site dimensions");
    }
    RegisterLayout out = *this;
    for (const auto &r : other.registers_) {
        out.add(r.name, r.size, r.grade, r.fermionic);
    }
    return out;
}

std::string RegisterLayout::str() const {
    std::ostringstream out;
    out << "N=" << modulus_;
    for (const auto &r : registers_) {
        out << " " << r.name << "[" << r.size << "]";
        if (r.fermionic) {
            out << "(f)";
        }
    }
    return out.str();
}

}  // namespace lgtdual
