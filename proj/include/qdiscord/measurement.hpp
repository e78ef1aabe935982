// Copyright 2026 The qdiscord Authors
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

// Projective measurements and the dephasing channels they induce.
//
// A one-sided measurement on A acts as {Pi_alpha (x) I_B}; the side is always
// explicit in this API, never implied.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/qstate.hpp"

#include <string>

namespace qdiscord {

namespace detail {

inline void check_basis_dim(const BipartiteState &state, const OrthonormalBasis &basis, Side side) {
    if (basis.dim() != state.dim(side)) {
        throw Error(ErrorKind::DimensionMismatch, std::string("basis of dimension ") + std::to_string(basis.dim()) +
                                                      " applied to side " + side_name(side) + " of dimension " +
                                                      std::to_string(state.dim(side)));
    }
}

inline void check_measurement_dims(const BipartiteState &state, const ProductMeasurement &m) {
    check_basis_dim(state, m.basis_a, Side::A);
    check_basis_dim(state, m.basis_b, Side::B);
}

inline CMatrix local_unitary(const CMatrix &u, Side side, Eigen::Index dim_a, Eigen::Index dim_b) {
    return side == Side::A ? kron(u, CMatrix::Identity(dim_b, dim_b)) : kron(CMatrix::Identity(dim_a, dim_a), u);
}

/// Diagonal of (Ua (x) Ub)^dagger rho (Ua (x) Ub), i.e. <alpha beta|rho|alpha beta>.
inline RVector product_diagonal(const CMatrix &rho, const CMatrix &ua, const CMatrix &ub) {
    const CMatrix w = kron(ua, ub);
    const CMatrix rw = rho * w;
    RVector p(w.cols());
    for (Eigen::Index k = 0; k < w.cols(); ++k) p(k) = w.col(k).dot(rw.col(k)).real();
    return p;
}

}  // namespace detail

/// sum_alpha (Pi_alpha (x) I) rho (Pi_alpha (x) I) for side A, and the mirror
/// image for side B.
inline BipartiteState dephase_one_sided(const BipartiteState &state, const OrthonormalBasis &basis, Side side) {
    detail::check_basis_dim(state, basis, side);
    const Eigen::Index na = state.dim_a();
    const Eigen::Index nb = state.dim_b();
    const CMatrix w = detail::local_unitary(basis.unitary(), side, na, nb);
    CMatrix r = w.adjoint() * state.matrix() * w;
    for (Eigen::Index i = 0; i < na * nb; ++i) {
        for (Eigen::Index j = 0; j < na * nb; ++j) {
            const bool keep = side == Side::A ? (i / nb == j / nb) : (i % nb == j % nb);
            if (!keep) r(i, j) = 0.0;
        }
    }
    CMatrix out = w * r * w.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return detail::trusted_bipartite(std::move(out), na, nb);
}

inline BipartiteState dephase_two_sided(const BipartiteState &state, const ProductMeasurement &m) {
    detail::check_measurement_dims(state, m);
    const CMatrix w = kron(m.basis_a.unitary(), m.basis_b.unitary());
    const RVector p = detail::product_diagonal(state.matrix(), m.basis_a.unitary(), m.basis_b.unitary());
    CMatrix out = w * p.cast<Complex>().asDiagonal() * w.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return detail::trusted_bipartite(std::move(out), state.dim_a(), state.dim_b());
}

/// p(alpha, beta) = <alpha beta|rho|alpha beta>, an n_A x n_B table.
inline RMatrix diagonal_distribution(const BipartiteState &state, const ProductMeasurement &m) {
    detail::check_measurement_dims(state, m);
    const RVector p = detail::product_diagonal(state.matrix(), m.basis_a.unitary(), m.basis_b.unitary());
    RMatrix table(state.dim_a(), state.dim_b());
    for (Eigen::Index a = 0; a < state.dim_a(); ++a)
        for (Eigen::Index b = 0; b < state.dim_b(); ++b) table(a, b) = p(a * state.dim_b() + b);
    return table;
}

}  // namespace qdiscord
