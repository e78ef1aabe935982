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

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

namespace qdiscord {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

namespace tol {
// Entrywise Hermiticity and |tr - 1| for density matrices.
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
// Minimum admissible eigenvalue of a density matrix.
inline constexpr double psd = -1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double unit_vector = 1e-10;
// Imaginary residue above this is an error, below it is discarded.
inline constexpr double residue = 1e-10;
}  // namespace tol

enum class Side { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
constexpr char side_name(Side s) { return s == Side::A ? 'A' : 'B'; }

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline double max_abs_entry(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Pauli matrices sigma_1, sigma_2, sigma_3.
inline const std::array<CMatrix, 3> &pauli() {
    static const std::array<CMatrix, 3> sigmas = [] {
        const Complex i{0.0, 1.0};
        std::array<CMatrix, 3> s{CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)};
        s[0] << 0.0, 1.0, 1.0, 0.0;
        s[1] << 0.0, -i, i, 0.0;
        s[2] << 1.0, 0.0, 0.0, -1.0;
        return s;
    }();
    return sigmas;
}

/// Eigenvalues of a Hermitian matrix in ascending order; only the
/// Hermitian part is read.
inline RVector hermitian_eigenvalues(const CMatrix &m) {
    if (m.rows() == 1) return RVector::Constant(1, m(0, 0).real());
    if (m.rows() == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double off = std::abs(m(0, 1));
        const double mean = 0.5 * (a + d);
        const double rad = std::hypot(0.5 * (a - d), off);
        RVector ev(2);
        ev << mean - rad, mean + rad;
        return ev;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace qdiscord
