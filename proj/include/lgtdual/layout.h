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

#ifndef LGTDUAL_LAYOUT_H
#define LGTDUAL_LAYOUT_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lgtdual {

/// A named block of consecutive N-level sites. `grade` is the primal cell
/// grade indexing the sites (-1 when the register has no cell geometry).
struct Register {
    std::string name;
    std::size_t offset = 0;
    std::size_t size = 0;
    int grade = -1;
    bool fermionic = false;

    bool operator==(const Register &) const = default;
};

/// Ordered registers over N-level sites. Site j of the layout is digit j of
/// the little-endian base-N expansion of a basis index.
class RegisterLayout {
   public:
    RegisterLayout() = default;
    explicit RegisterLayout(int modulus);

    RegisterLayout &add(std::string name, std::size_t size, int grade, bool fermionic = false);

    int modulus() const { return modulus_; }
    std::size_t num_sites() const { return num_sites_; }
    /// N^num_sites; throws if that would overflow.
    std::size_t dimension() const;

    const std::vector<Register> &registers() const { return registers_; }
    bool contains(std::string_view name) const;
    const Register &at(std::string_view name) const;
    std::size_t site(std::string_view name, std::size_t cell) const;
    std::vector<std::size_t> sites_of(std::string_view name) const;

    /// Layout after dropping the given sites. Fully covered registers vanish;
    /// partially covered ones shrink and lose their cell geometry.
    RegisterLayout without(const std::vector<std::size_t> &sites) const;
    /// This layout followed by all registers of `other`.
    RegisterLayout concat(const RegisterLayout &other) const;

    std::string str() const;

    bool operator==(const RegisterLayout &) const = default;

   private:
    int modulus_ = 2;
    std::size_t num_sites_ = 0;
    std::vector<Register> registers_;
};

}  // namespace lgtdual

#endif
