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

#include "lgtdual/models.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgtdual {

namespace {

struct ModelInfo {
    ModelId id;
    const char *name;
    bool gauged;
};

constexpr ModelInfo kModels[] = {
    {ModelId::tfi, "tfi", false},         {ModelId::gt, "gt", true},
    {ModelId::ttfi, "ttfi", false},       {ModelId::tgt, "tgt", true},
    {ModelId::zn_clock, "zn_clock", false}, {ModelId::zn_gt, "zn_gt", true},
    {ModelId::tl_ising, "tl_ising", false}, {ModelId::gm, "gm", true},
    {ModelId::qed, "qed", true},          {ModelId::sp, "sp", false},
    {ModelId::fs, "fs", true},
};

const ModelInfo &info(ModelId id) {
    for (const auto &m : kModels) {
        if (m.id == id) {
            return m;
        }
    }
    throw std::invalid_argument("unknown model id");
}

double need(const std::optional<double> &v, const char *name, ModelId id) {
    if (!v) {
        throw std::invalid_argument(std::string("model ") + info(id).name + " needs coupling " + name);
    }
    if (!std::isfinite(*v)) {
        throw std::invalid_argument(std::string("coupling ") + name + " is not finite");
    }
    return *v;
}

void require_lattice(ModelId id, const CellComplex &cx, std::initializer_list<LatticeKind> kinds, bool qubits) {
    bool ok = false;
    for (auto k : kinds) {
        ok = ok || cx.kind() == k;
    }
    if (!ok) {
        throw std::invalid_argument(
            std::string("model ") + info(id).name + " is not defined on a " + lattice_kind_name(cx.kind()) + " lattice");
    }
    if (qubits && cx.modulus() != 2) {
        throw std::invalid_argument(std::string("model ") + info(id).name + " needs N = 2");
    }
}

Chain cell(const CellComplex &cx, int grade, std::size_t idx) { return Chain::cell(cx, grade, idx); }

WeylString z_of(const ModelSpec &m, const Chain &c, std::string_view reg) {
    return weyl_from_chain(PauliKind::z, m.complex, c, m.layout, reg);
}

WeylString x_of(const ModelSpec &m, const Chain &c, std::string_view reg) {
    return weyl_from_chain(PauliKind::x, m.complex, c, m.layout, reg);
}

ModelTerm plain(WeylString op, double weight, std::string label, bool hermitize = false) {
    return ModelTerm{Term{std::move(op), {}, hermitize}, weight, std::move(label)};
}

std::string tag(const char *prefix, std::size_t k) { return std::string(prefix) + "[" + std::to_string(k) + "]"; }

WeylString global_x(const ModelSpec &m, std::string_view reg) {
    WeylString w(m.layout.num_sites(), m.layout.modulus());
    for (auto s : m.layout.sites_of(reg)) {
        w.set_x(s, 1);
    }
    return w;
}

/// Triangles containing vertex v, each once.
std::vector<std::size_t> triangles_at(const CellComplex &cx, std::size_t v) {
    std::vector<std::size_t> out;
    for (const auto &e : cx.cofaces(0, v)) {
        for (const auto &t : cx.cofaces(1, e.cell)) {
            bool seen = false;
            for (auto u : out) {
                seen = seen || u == t.cell;
            }
            if (!seen) {
                out.push_back(t.cell);
            }
        }
    }
    return out;
}

// Per-model builders. Groups are pushed in the order the factors are written
// in the Trotter product.

void build_tfi(ModelSpec &m) {
    const auto &cx = m.complex;
    double lambda = need(m.couplings.lambda, "lambda", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("vertices", cx.cell_count(0), 0);
    FactorGroup field{"field", {}}, bond{"bond", {}};
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        field.terms.push_back(plain(x_of(m, cell(cx, 0, v), "vertices"), lambda, tag("X", v)));
    }
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        bond.terms.push_back(plain(z_of(m, boundary(cx, cell(cx, 1, e)), "vertices"), 1.0, tag("ZZ", e)));
    }
    m.groups = {field, bond};
    m.symmetries = {global_x(m, "vertices")};
}

void build_gt(ModelSpec &m) {
    const auto &cx = m.complex;
    double lambda = need(m.couplings.lambda, "lambda", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("edges", cx.cell_count(1), 1);
    FactorGroup field{"star", {}}, electric{"electric", {}};
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        field.terms.push_back(plain(x_of(m, coboundary(cx, cell(cx, 0, v)), "edges"), lambda, tag("Xstar", v)));
    }
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 1, e), "edges"), 1.0, tag("Z", e)));
    }
    m.groups = {field, electric};
}

void build_ttfi(ModelSpec &m) {
    const auto &cx = m.complex;
    double g = need(m.couplings.g, "g", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("vertices", cx.cell_count(0), 0);
    FactorGroup twisted{"twisted_field", {}}, bond{"bond", {}};
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        Term t{x_of(m, cell(cx, 0, v), "vertices"), {}, false};
        for (auto tri : triangles_at(cx, v)) {
            t.twists.push_back(z_of(m, boundary(cx, cell(cx, 1, cx.opposite_edge(tri, v))), "vertices"));
        }
        twisted.terms.push_back(ModelTerm{std::move(t), 1.0, tag("O", v)});
    }
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        bond.terms.push_back(plain(z_of(m, boundary(cx, cell(cx, 1, e)), "vertices"), g, tag("ZZ", e)));
    }
    m.groups = {twisted, bond};
    m.symmetries = {global_x(m, "vertices")};
}

void build_tgt(ModelSpec &m) {
    const auto &cx = m.complex;
    double g = need(m.couplings.g, "g", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("edges", cx.cell_count(1), 1);
    FactorGroup twisted{"twisted_star", {}}, electric{"electric", {}};
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        Term t{x_of(m, coboundary(cx, cell(cx, 0, v)), "edges"), {}, false};
        for (auto tri : triangles_at(cx, v)) {
            t.twists.push_back(z_of(m, cell(cx, 1, cx.opposite_edge(tri, v)), "edges"));
        }
        twisted.terms.push_back(ModelTerm{std::move(t), 1.0, tag("Ostar", v)});
    }
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 1, e), "edges"), g, tag("Z", e)));
    }
    m.groups = {twisted, electric};
}

void build_zn_clock(ModelSpec &m) {
    const auto &cx = m.complex;
    double lambda = need(m.couplings.lambda, "lambda", m.id);
    m.layout = RegisterLayout(cx.modulus());
    m.layout.add("vertices", cx.cell_count(0), 0);
    FactorGroup bond{"bond", {}}, field{"field", {}};
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        bond.terms.push_back(plain(z_of(m, boundary(cx, cell(cx, 1, e)), "vertices"), 1.0, tag("ZZdag", e), true));
    }
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        field.terms.push_back(plain(x_of(m, cell(cx, 0, v), "vertices"), lambda, tag("X", v), true));
    }
    m.groups = {bond, field};
    m.symmetries = {global_x(m, "vertices")};
}

void build_zn_gt(ModelSpec &m) {
    const auto &cx = m.complex;
    double lambda = need(m.couplings.lambda, "lambda", m.id);
    m.layout = RegisterLayout(cx.modulus());
    m.layout.add("edges", cx.cell_count(1), 1);
    FactorGroup electric{"electric", {}}, field{"star", {}};
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 1, e), "edges"), 1.0, tag("Z", e), true));
    }
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        field.terms.push_back(plain(x_of(m, coboundary(cx, cell(cx, 0, v)), "edges"), lambda, tag("Xstar", v), true));
    }
    m.groups = {electric, field};
}

void build_tl_ising(ModelSpec &m) {
    const auto &cx = m.complex;
    double g = need(m.couplings.g, "g", m.id);
    double h = need(m.couplings.h, "h", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("vertices", cx.cell_count(0), 0);
    FactorGroup bond{"bond", {}}, longitudinal{"longitudinal", {}}, field{"field", {}};
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        bond.terms.push_back(plain(z_of(m, boundary(cx, cell(cx, 1, e)), "vertices"), 1.0, tag("ZZ", e)));
    }
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        longitudinal.terms.push_back(plain(z_of(m, cell(cx, 0, v), "vertices"), h, tag("Z", v)));
        field.terms.push_back(plain(x_of(m, cell(cx, 0, v), "vertices"), g, tag("X", v)));
    }
    m.groups = {bond, longitudinal, field};
}

void build_gm(ModelSpec &m) {
    const auto &cx = m.complex;
    double g = need(m.couplings.g, "g", m.id);
    double h = need(m.couplings.h, "h", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("gauge", cx.cell_count(0), 0).add("matter", cx.cell_count(1), 1);
    FactorGroup matter{"matter", {}}, electric{"electric", {}}, hop{"hopping", {}};
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        matter.terms.push_back(plain(z_of(m, cell(cx, 1, e), "matter"), 1.0, tag("Zm", e)));
    }
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 0, v), "gauge"), h, tag("Zg", v)));
        WeylString op = x_of(m, cell(cx, 0, v), "gauge") * x_of(m, coboundary(cx, cell(cx, 0, v)), "matter");
        hop.terms.push_back(plain(std::move(op), g, tag("XgXmXm", v)));
    }
    m.groups = {matter, electric, hop};
}

void build_qed(ModelSpec &m, int boundary_sign) {
    const auto &cx = m.complex;
    double g = need(m.couplings.g, "g", m.id);
    double h = need(m.couplings.h, "h", m.id);
    m.layout = RegisterLayout(2);
    m.layout.add("gauge", cx.cell_count(0), 0).add("fermion", cx.cell_count(1), 1, true);
    m.fermions = FermionLayout::on_cycle(cx, m.layout, "fermion", boundary_sign);
    FactorGroup parity{"parity", {}}, electric{"electric", {}}, hop{"hopping", {}};
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        parity.terms.push_back(plain(jw_encode(*m.fermions, {BilinearKind::parity, e}), 1.0, tag("P", e)));
    }
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 0, v), "gauge"), h, tag("Zg", v)));
        WeylString op = x_of(m, cell(cx, 0, v), "gauge") * jw_encode(*m.fermions, {BilinearKind::hopping, v});
        hop.terms.push_back(plain(std::move(op), g, tag("XgS", v)));
    }
    m.groups = {parity, electric, hop};
}

void build_sp(ModelSpec &m) {
    const auto &cx = m.complex;
    double mu = need(m.couplings.mu, "mu", m.id);
    double lambda = need(m.couplings.lambda, "lambda", m.id);
    if (mu == 0.0 || lambda == 0.0) {
        throw std::invalid_argument("mu and lambda must be nonzero");
    }
    m.layout = RegisterLayout(2);
    m.layout.add("edges", cx.cell_count(1), 1);
    FactorGroup star{"star", {}}, electric{"electric", {}}, plaq{"plaquette", {}}, field{"field", {}};
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        star.terms.push_back(plain(x_of(m, coboundary(cx, cell(cx, 0, v)), "edges"), mu, tag("Xstar", v)));
    }
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 1, e), "edges"), 1.0 / mu, tag("Z", e)));
        field.terms.push_back(plain(x_of(m, cell(cx, 1, e), "edges"), 1.0 / lambda, tag("X", e)));
    }
    for (std::size_t p = 0; p < cx.cell_count(2); p++) {
        plaq.terms.push_back(plain(z_of(m, boundary(cx, cell(cx, 2, p)), "edges"), lambda, tag("Zplaq", p)));
    }
    m.groups = {star, electric, plaq, field};
}

void build_fs(ModelSpec &m) {
    const auto &cx = m.complex;
    double mu = need(m.couplings.mu, "mu", m.id);
    double lambda = need(m.couplings.lambda, "lambda", m.id);
    if (mu == 0.0 || lambda == 0.0) {
        throw std::invalid_argument("mu and lambda must be nonzero");
    }
    m.layout = RegisterLayout(2);
    m.layout.add("gauge", cx.cell_count(1), 1).add("matter", cx.cell_count(2), 2);
    FactorGroup star{"star", {}}, electric{"electric", {}}, matter{"matter", {}}, hop{"hopping", {}};
    for (std::size_t v = 0; v < cx.cell_count(0); v++) {
        star.terms.push_back(plain(x_of(m, coboundary(cx, cell(cx, 0, v)), "gauge"), mu, tag("Xstar", v)));
    }
    for (std::size_t e = 0; e < cx.cell_count(1); e++) {
        electric.terms.push_back(plain(z_of(m, cell(cx, 1, e), "gauge"), 1.0 / mu, tag("Zg", e)));
        WeylString op = x_of(m, cell(cx, 1, e), "gauge") * x_of(m, coboundary(cx, cell(cx, 1, e)), "matter");
        hop.terms.push_back(plain(std::move(op), 1.0 / lambda, tag("XgXmXm", e)));
    }
    for (std::size_t p = 0; p < cx.cell_count(2); p++) {
        matter.terms.push_back(plain(z_of(m, cell(cx, 2, p), "matter"), lambda, tag("Zm", p)));
    }
    m.groups = {star, electric, matter, hop};
}

void check_terms(const ModelSpec &m) {
    for (const auto &grp : m.groups) {
        for (const auto &t : grp.terms) {
            if (!t.term.hermitize && t.term.twists.empty() && !t.term.op.is_hermitian()) {
                throw std::logic_error("term " + t.label + " is not Hermitian");
            }
            for (const auto &s : m.symmetries) {
                bool ok = commutation_phase(t.term.op, s) == 0;
                for (const auto &w : t.term.twists) {
                    ok = ok && commutation_phase(w, s) == 0;
                }
                if (!ok) {
                    throw std::logic_error("term " + t.label + " breaks a declared symmetry");
                }
            }
        }
    }
}

ModelSpec finish(ModelSpec m) {
    if (is_gauged(m.id)) {
        m.symmetries = gauge_generators(m);
    }
    check_terms(m);
    return m;
}

}  // namespace

std::string model_name(ModelId id) { return info(id).name; }

ModelId parse_model(std::string_view name) {
    for (const auto &m : kModels) {
        if (name == m.name) {
            return m.id;
        }
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

const std::vector<ModelId> &all_models() {
    static const std::vector<ModelId> ids = [] {
        std::vector<ModelId> out;
        for (const auto &m : kModels) {
            out.push_back(m.id);
        }
        return out;
    }();
    return ids;
}

bool is_gauged(ModelId id) { return info(id).gauged; }

std::vector<WeightedTerm> ModelSpec::hamiltonian() const {
    std::vector<WeightedTerm> h;
    for (const auto &grp : groups) {
        for (const auto &t : grp.terms) {
            h.push_back(WeightedTerm{t.term, -t.weight});
        }
    }
    return h;
}

std::size_t ModelSpec::term_count() const {
    std::size_t n = 0;
    for (const auto &grp : groups) {
        n += grp.terms.size();
    }
    return n;
}

ModelSpec build_model(ModelId id, const CellComplex &cx, const Couplings &couplings) {
    if (id == ModelId::qed) {
        return build_qed_model(cx, couplings, -1);
    }
    ModelSpec m;
    m.id = id;
    m.complex = cx;
    m.couplings = couplings;
    using K = LatticeKind;
    switch (id) {
        case ModelId::tfi:
            require_lattice(id, cx, {K::cycle, K::square_torus}, true);
            build_tfi(m);
            break;
        case ModelId::gt:
            require_lattice(id, cx, {K::cycle, K::square_torus}, true);
            build_gt(m);
            break;
        case ModelId::ttfi:
            require_lattice(id, cx, {K::triangular_torus}, true);
            build_ttfi(m);
            break;
        case ModelId::tgt:
            require_lattice(id, cx, {K::triangular_torus}, true);
            build_tgt(m);
            break;
        case ModelId::zn_clock:
            require_lattice(id, cx, {K::cycle, K::square_torus}, false);
            build_zn_clock(m);
            break;
        case ModelId::zn_gt:
            require_lattice(id, cx, {K::cycle, K::square_torus}, false);
            build_zn_gt(m);
            break;
        case ModelId::tl_ising:
            require_lattice(id, cx, {K::cycle}, true);
            build_tl_ising(m);
            break;
        case ModelId::gm:
            require_lattice(id, cx, {K::cycle}, true);
            build_gm(m);
            break;
        case ModelId::sp:
            require_lattice(id, cx, {K::square_torus}, true);
            build_sp(m);
            break;
        case ModelId::fs:
            require_lattice(id, cx, {K::square_torus}, true);
            build_fs(m);
            break;
        case ModelId::qed:
            break;
    }
    return finish(std::move(m));
}

ModelSpec build_qed_model(const CellComplex &cx, const Couplings &couplings, int boundary_sign) {
    ModelSpec m;
    m.id = ModelId::qed;
    m.complex = cx;
    m.couplings = couplings;
    require_lattice(m.id, cx, {LatticeKind::cycle}, true);
    build_qed(m, boundary_sign);
    return finish(std::move(m));
}

std::vector<WeylString> gauge_generators(const ModelSpec &m) {
    const auto &cx = m.complex;
    std::vector<WeylString> out;
    switch (m.id) {
        case ModelId::gt:
        case ModelId::zn_gt:
            if (cx.kind() == LatticeKind::cycle) {
                WeylString w(m.layout.num_sites(), m.layout.modulus());
                for (auto s : m.layout.sites_of("edges")) {
                    w.set_z(s, 1);
                }
                out.push_back(w);
            } else {
                for (std::size_t p = 0; p < cx.cell_count(2); p++) {
                    out.push_back(z_of(m, boundary(cx, cell(cx, 2, p)), "edges"));
                }
            }
            break;
        case ModelId::tgt:
            for (std::size_t p = 0; p < cx.cell_count(2); p++) {
                out.push_back(z_of(m, boundary(cx, cell(cx, 2, p)), "edges"));
            }
            break;
        case ModelId::gm:
        case ModelId::qed: {
            const char *matter = m.id == ModelId::gm ? "matter" : "fermion";
            for (std::size_t e = 0; e < cx.cell_count(1); e++) {
                out.push_back(z_of(m, cell(cx, 1, e), matter) * z_of(m, boundary(cx, cell(cx, 1, e)), "gauge"));
            }
            break;
        }
        case ModelId::fs:
            for (std::size_t p = 0; p < cx.cell_count(2); p++) {
                out.push_back(z_of(m, cell(cx, 2, p), "matter") * z_of(m, boundary(cx, cell(cx, 2, p)), "gauge"));
            }
            break;
        default:
            throw std::invalid_argument("model " + model_name(m.id) + " has no gauge generators");
    }
    return out;
}

std::vector<std::pair<std::string, Term>> stabilizers(const ModelSpec &m) {
    std::vector<std::pair<std::string, Term>> out;
    auto gens = gauge_generators(m);
    for (std::size_t k = 0; k < gens.size(); k++) {
        out.emplace_back(tag("gauss", k), Term{gens[k], {}, false});
    }
    if (m.id == ModelId::gt || m.id == ModelId::tgt) {
        for (const auto &t : m.groups.front().terms) {
            out.emplace_back(t.label, t.term);
        }
    }
    return out;
}

TrotterSchedule trotter_schedule(const ModelSpec &m, double t, int k, TimeMode mode) {
    if (k < 1) {
        throw std::invalid_argument("Trotter step count must be at least 1");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolution time is not finite");
    }
    TrotterSchedule s;
    s.layout = m.layout;
    s.steps = k;
    s.time = t;
    s.mode = mode;
    if (t == 0.0) {
        return s;
    }
    double dt = t / k;
    for (const auto &grp : m.groups) {
        for (const auto &term : grp.terms) {
            s.factors.push_back(TrotterFactor{term.term, dt * term.weight});
        }
    }
    return s;
}

namespace {

void one_step(StateVector &psi, const TrotterSchedule &schedule) {
    for (auto it = schedule.factors.rbegin(); it != schedule.factors.rend(); ++it) {
        apply_term_exp(psi, it->term, it->angle, schedule.mode);
    }
}

void check_layout(const StateVector &psi, const TrotterSchedule &schedule) {
    if (!(psi.layout() == schedule.layout)) {
        throw std::invalid_argument("state layout " + psi.layout().str() + " does not match schedule layout " +
                                    schedule.layout.str());
    }
}

}  // namespace

void evolve(StateVector &psi, const TrotterSchedule &schedule) {
    check_layout(psi, schedule);
    if (schedule.factors.empty()) {
        return;
    }
    for (int step = 0; step < schedule.steps; step++) {
        one_step(psi, schedule);
    }
}

double evolve_imaginary(StateVector &psi, const TrotterSchedule &schedule) {
    check_layout(psi, schedule);
    if (schedule.mode != TimeMode::imaginary) {
        throw std::invalid_argument("schedule is not in imaginary-time mode");
    }
    double start = psi.norm();
    if (start == 0.0) {
        throw std::domain_error("cannot evolve a zero state");
    }
    psi.scale(1.0 / start);
    double growth = 1.0;
    if (!schedule.factors.empty()) {
        for (int step = 0; step < schedule.steps; step++) {
            one_step(psi, schedule);
            double n = psi.norm();
            if (!(n > 0.0) || !std::isfinite(n)) {
                throw std::domain_error("norm vanished during imaginary-time evolution");
            }
            growth *= n;
            psi.scale(1.0 / n);
        }
    }
    return growth;
}

}  // namespace lgtdual
