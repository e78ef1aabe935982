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

#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qdiscord {

/// An orthonormal basis of one subsystem, stored as the unitary whose
/// columns are the basis vectors. Projectors are derived on demand; the
/// phase of each column is irrelevant to everything downstream.
class OrthonormalBasis {
   public:
    /// The one-dimensional basis {1}.
    OrthonormalBasis() : u_(CMatrix::Identity(1, 1)) {}

    explicit OrthonormalBasis(CMatrix vectors) : u_(std::move(vectors)) {
        if (u_.rows() == 0 || u_.rows() != u_.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "basis matrix must be square and non-empty");
        }
        const CMatrix gram = u_.adjoint() * u_;
        const double dev = max_abs_entry(gram - CMatrix::Identity(u_.rows(), u_.cols()));
        if (!(dev <= tol::unitary)) {
            throw Error(ErrorKind::NotUnitary, "U^dagger U deviates from identity by " + std::to_string(dev));
        }
    }

    Eigen::Index dim() const { return u_.rows(); }
    const CMatrix &unitary() const { return u_; }
    CVector vector(Eigen::Index k) const { return u_.col(k); }
    CMatrix projector(Eigen::Index k) const { return u_.col(k) * u_.col(k).adjoint(); }

   private:
    struct Trusted {};
    OrthonormalBasis(CMatrix vectors, Trusted) : u_(std::move(vectors)) {}

    CMatrix u_;

    friend OrthonormalBasis trusted_basis(CMatrix);
};

// For unitaries produced by construction (matrix exponentials, closed forms).
inline OrthonormalBasis trusted_basis(CMatrix u) {
    return OrthonormalBasis(std::move(u), OrthonormalBasis::Trusted{});
}

/// Pi_{alpha beta} = |alpha><alpha| (x) |beta><beta|.
struct ProductMeasurement {
    OrthonormalBasis basis_a;
    OrthonormalBasis basis_b;

    const OrthonormalBasis &on(Side s) const { return s == Side::A ? basis_a : basis_b; }
};

inline OrthonormalBasis computational_basis(Eigen::Index dim) {
    if (dim < 1) throw Error(ErrorKind::Domain, "basis dimension must be >= 1");
    return trusted_basis(CMatrix::Identity(dim, dim));
}

/// Qubit basis whose projectors are (I + a.sigma)/2 and (I - a.sigma)/2.
/// Column 0 is the +a eigenvector.
inline OrthonormalBasis bloch_basis(const Vec3 &a) {
    const double norm = a.norm();
    if (!(std::abs(norm - 1.0) <= tol::unit_vector)) {
        throw Error(ErrorKind::NotUnitVector, "Bloch direction has norm " + std::to_string(norm));
    }
    const Vec3 n = a / norm;
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    const double phi = std::atan2(n.y(), n.x());
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex e = std::polar(1.0, phi);
    CMatrix u(2, 2);
    u << c, -std::conj(e) * s, e * s, c;
    return trusted_basis(std::move(u));
}

}  // namespace qdiscord
