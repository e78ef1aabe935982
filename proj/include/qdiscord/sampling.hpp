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

// Seeded samplers for randomized checks.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/qstate.hpp"

#include <cstdint>
#include <random>

namespace qdiscord::sampling {

using Rng = std::mt19937_64;

inline std::uint64_t next_seed(Rng &rng) { return rng(); }

inline Eigen::Index uniform_index(Rng &rng, Eigen::Index lo, Eigen::Index hi) {
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

/// Ginibre state of random rank in [1, n_A n_B].
inline BipartiteState state(Rng &rng, Eigen::Index dim_a, Eigen::Index dim_b) {
    const Eigen::Index rank = uniform_index(rng, 1, dim_a * dim_b);
    return random_state(dim_a, dim_b, rank, next_seed(rng));
}

inline DensityMatrix local_state(Rng &rng, Eigen::Index dim) {
    return random_state(dim, 1, uniform_index(rng, 1, dim), next_seed(rng)).rho();
}

inline BipartiteState product_state(Rng &rng, Eigen::Index dim_a, Eigen::Index dim_b) {
    const DensityMatrix a = local_state(rng, dim_a);
    return tensor(a, local_state(rng, dim_b));
}

inline OrthonormalBasis basis(Rng &rng, Eigen::Index dim) { return OrthonormalBasis(random_unitary(dim, rng)); }

inline ProductMeasurement measurement(Rng &rng, Eigen::Index dim_a, Eigen::Index dim_b) {
    OrthonormalBasis a = basis(rng, dim_a);
    return ProductMeasurement{std::move(a), basis(rng, dim_b)};
}

/// Exponential weights normalized to sum 1 (uniform on the simplex).
inline RMatrix distribution(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    std::exponential_distribution<double> e(1.0);
    RMatrix p(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) p(i, j) = e(rng);
    return p / p.sum();
}

inline BipartiteState classical_classical_state(Rng &rng, Eigen::Index dim_a, Eigen::Index dim_b) {
    const RMatrix p = distribution(rng, dim_a, dim_b);
    const ProductMeasurement m = measurement(rng, dim_a, dim_b);
    return classical_classical(p, m.basis_a, m.basis_b);
}

inline Vec3 unit_vector(Rng &rng) {
    std::normal_distribution<double> n;
    Vec3 v(n(rng), n(rng), n(rng));
    while (v.norm() < 1e-6) v = Vec3(n(rng), n(rng), n(rng));
    return v / v.norm();
}

/// Haar rotation in SO(3).
inline Mat3 rotation(Rng &rng) {
    std::normal_distribution<double> n;
    Mat3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = n(rng);
    Eigen::HouseholderQR<Mat3> qr(g);
    Mat3 q = qr.householderQ();
    const Mat3 r = qr.matrixQR();
    for (int k = 0; k < 3; ++k)
        if (r(k, k) < 0) q.col(k) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

inline bool is_physical(const TwoQubitBloch &b) {
    try {
        (void)from_bloch(b);
        return true;
    } catch (const Error &) {
        return false;
    }
}

/// Two-qubit state with x = y = 0: T = R1 diag(c) R2^T with c drawn
/// uniformly from the physical region by rejection.
inline TwoQubitBloch zero_marginal_bloch(Rng &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TwoQubitBloch b;
    do {
        b.t = Vec3(u(rng), u(rng), u(rng)).asDiagonal();
    } while (!is_physical(b));
    b.t = rotation(rng) * b.t * rotation(rng).transpose();
    return b;
}

/// Two-qubit state with T = 0: local Bloch vectors with |x| + |y| <= 1.
inline TwoQubitBloch uncorrelated_tensor_bloch(Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double rx = u(rng);
    const double ry = (1.0 - rx) * u(rng);
    TwoQubitBloch b;
    b.x = rx * unit_vector(rng);
    b.y = ry * unit_vector(rng);
    return b;
}

/// Two-qubit product state, given by T = x y^T.
inline TwoQubitBloch product_bloch(Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TwoQubitBloch b;
    b.x = u(rng) * unit_vector(rng);
    b.y = u(rng) * unit_vector(rng);
    b.t = b.x * b.y.transpose();
    return b;
}

}  // namespace qdiscord::sampling
