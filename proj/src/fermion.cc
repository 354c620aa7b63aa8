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

#include "lgtdual/fermion.h"

#include <stdexcept>

namespace lgtdual {

FermionLayout::FermionLayout(std::vector<std::size_t> mode_sites, std::size_t num_sites, int modulus, int boundary_sign)
    : mode_sites_(std::move(mode_sites)), num_sites_(num_sites), boundary_sign_(boundary_sign) {
    if (modulus != 2) {
        throw std::invalid_argument("fermion modes need qubit sites");
    }
    if (boundary_sign != 1 && boundary_sign != -1) {
        throw std::invalid_argument("boundary sign must be +1 or -1");
    }
    if (mode_sites_.size() < 2) {
        throw std::invalid_argument("a fermion ring needs at least two modes");
    }
    for (auto s : mode_sites_) {
        if (s >= num_sites_) {
            throw std::out_of_range("fermion mode outside the layout");
        }
    }
}

FermionLayout FermionLayout::on_cycle(
    const CellComplex &cx, const RegisterLayout &layout, std::string_view reg, int boundary_sign) {
    if (cx.kind() != LatticeKind::cycle) {
        throw std::invalid_argument("fermion rings are built on cycles");
    }
    const Register &r = layout.at(reg);
    if (r.grade != 1 || r.size != cx.cell_count(1)) {
        throw std::invalid_argument("fermion register must hold one mode per edge");
    }
    return FermionLayout(layout.sites_of(reg), layout.num_sites(), layout.modulus(), boundary_sign);
}

std::size_t FermionLayout::hop_minus(std::size_t hop) const {
    if (hop >= num_modes()) {
        throw std::out_of_range("hop index out of range");
    }
    return hop == 0 ? num_modes() - 1 : hop - 1;
}

std::size_t FermionLayout::hop_plus(std::size_t hop) const {
    if (hop >= num_modes()) {
        throw std::out_of_range("hop index out of range");
    }
    return hop;
}

WeylString FermionLayout::majorana(std::size_t mode, bool primed) const {
    if (mode >= num_modes()) {
        throw std::out_of_range("mode index out of range");
    }
    WeylString w(num_sites_, 2);
    for (std::size_t m = 0; m < mode; m++) {
        w.set_z(mode_sites_[m], 1);
    }
    std::size_t s = mode_sites_[mode];
    w.set_x(s, 1);
    if (primed) {
        w.set_z(s, 1);
        w.add_phase(1);
    }
    return w;
}

WeylString jw_encode(const FermionLayout &layout, Bilinear bilinear, bool with_boundary_sign) {
    if (bilinear.kind == BilinearKind::parity) {
        WeylString p = layout.majorana(bilinear.index, true) * layout.majorana(bilinear.index, false);
        p.add_phase(1);
        return p;
    }
    std::size_t hop = bilinear.index;
    WeylString s = layout.majorana(layout.hop_minus(hop), true) * layout.majorana(layout.hop_plus(hop), false);
    s.add_phase(3);
    if (with_boundary_sign && layout.hop_wraps(hop) && layout.boundary_sign() < 0) {
        s.add_phase(2);
    }
    return s;
}

}  // namespace lgtdual
