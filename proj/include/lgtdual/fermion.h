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

#ifndef LGTDUAL_FERMION_H
#define LGTDUAL_FERMION_H

#include <cstddef>
#include <string_view>
#include <vector>

#include "lgtdual/complex.h"
#include "lgtdual/layout.h"
#include "lgtdual/weyl.h"

namespace lgtdual {

/// Jordan-Wigner ordering of Majorana modes on a ring.
///
/// Mode m sits on site `mode_site(m)` of the surrounding layout. Hops are the
/// dual edges of the ring: hop h joins mode h-1 (minus end) to mode h (plus
/// end), so hop 0 wraps around from the last mode to the first one and is the
/// only hop carrying the boundary sign q.
class FermionLayout {
   public:
    FermionLayout(std::vector<std::size_t> mode_sites, std::size_t num_sites, int modulus, int boundary_sign = -1);

    /// Modes on the register `reg`, one per edge of a cycle, in edge order.
    /// Hop h is then the dual edge crossing vertex h.
    static FermionLayout on_cycle(
        const CellComplex &cx, const RegisterLayout &layout, std::string_view reg, int boundary_sign = -1);

    std::size_t num_modes() const { return mode_sites_.size(); }
    std::size_t num_sites() const { return num_sites_; }
    int boundary_sign() const { return boundary_sign_; }
    std::size_t mode_site(std::size_t mode) const { return mode_sites_.at(mode); }

    std::size_t hop_minus(std::size_t hop) const;
    std::size_t hop_plus(std::size_t hop) const;
    bool hop_wraps(std::size_t hop) const { return hop == 0; }

    /// chi_m (primed = false) or chi'_m (primed = true) as qubit strings:
    /// chi_m = Z_{<m} X_m,  chi'_m = Z_{<m} Y_m.
    WeylString majorana(std::size_t mode, bool primed) const;

   private:
    std::vector<std::size_t> mode_sites_;
    std::size_t num_sites_;
    int boundary_sign_;
};

enum class BilinearKind { hopping, parity };

/// S on a hop (index = hop) or P on a mode (index = mode).
struct Bilinear {
    BilinearKind kind;
    std::size_t index;
};

/// Qubit form of S_hop = -i chi'_{minus} chi_{plus} or P_mode = i chi'_m chi_m.
/// With `with_boundary_sign`, the wrapping hop is multiplied by q.
WeylString jw_encode(const FermionLayout &layout, Bilinear bilinear, bool with_boundary_sign = true);

}  // namespace lgtdual

#endif
