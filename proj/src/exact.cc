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

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "lgtdual/engine.h"

namespace lgtdual {

namespace {

RegisterLayout flat_layout(std::size_t sites, int N) {
    RegisterLayout layout(N);
    layout.add("sites", sites, -1);
    return layout;
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const Term &term, const RegisterLayout &layout) {
    const std::size_t dim = layout.dimension();
    if (dim > kExactDimensionLimit) {
        throw std::length_error("dense matrix beyond the exact-evolution bound");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    StateVector e = StateVector::zero_vector(layout);
    for (std::size_t b = 0; b < dim; b++) {
        e[b] = 1.0;
        StateVector col = apply_term(term, e);
        e[b] = 0.0;
        for (std::size_t r = 0; r < dim; r++) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = col[r];
        }
    }
    return m;
}

Eigen::MatrixXcd dense_matrix(const WeylString &op) {
    return dense_matrix(Term{op, {}, false}, flat_layout(op.size(), op.modulus()));
}

Eigen::MatrixXcd dense_hamiltonian(const std::vector<WeightedTerm> &h, const RegisterLayout &layout) {
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    if (layout.dimension() > kExactDimensionLimit) {
        throw std::length_error("Hamiltonian beyond the exact-evolution bound");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &wt : h) {
        m += wt.weight * dense_matrix(wt.term, layout);
    }
    return m;
}

StateVector exact_evolve(const StateVector &psi, const std::vector<WeightedTerm> &h, double t) {
    if (psi.dimension() > kExactDimensionLimit) {
        throw std::length_error("state dimension beyond the exact-evolution bound");
    }
    Eigen::MatrixXcd H = dense_hamiltonian(h, psi.layout());
    if ((H - H.adjoint()).norm() > 1e-9 * (1.0 + H.norm())) {
        throw std::invalid_argument("Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const auto dim = static_cast<Eigen::Index>(psi.dimension());
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; k++) {
        v(k) = psi[static_cast<std::size_t>(k)];
    }
    Eigen::VectorXcd c = eig.eigenvectors().adjoint() * v;
    for (Eigen::Index k = 0; k < dim; k++) {
        c(k) *= std::polar(1.0, -eig.eigenvalues()(k) * t);
    }
    Eigen::VectorXcd out = eig.eigenvectors() * c;
    std::vector<Amplitude> amps(psi.dimension());
    for (Eigen::Index k = 0; k < dim; k++) {
        amps[static_cast<std::size_t>(k)] = out(k);
    }
    return StateVector(psi.layout(), std::move(amps));
}

}  // namespace lgtdual
