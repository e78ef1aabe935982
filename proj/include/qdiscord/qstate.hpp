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

#include "qdiscord/basis.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

namespace qdiscord {

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
/// Asymmetry is never repaired and negative eigenvalues are never clipped.
class DensityMatrix {
   public:
    explicit DensityMatrix(CMatrix entries) : m_(std::move(entries)) { validate(m_); }

    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix &matrix() const { return m_; }
    const Complex &operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    static void validate(const CMatrix &m) {
        if (m.rows() == 0 || m.rows() != m.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "density matrix must be square and non-empty");
        }
        const double asym = max_abs_entry(m - m.adjoint());
        if (!(asym <= tol::hermitian)) {
            throw Error(ErrorKind::NonHermitian, "max |rho - rho^dagger| = " + std::to_string(asym));
        }
        const Complex tr = m.trace();
        if (!(std::abs(tr - 1.0) <= tol::trace)) {
            throw Error(ErrorKind::NonUnitTrace,
                        "trace = " + std::to_string(tr.real()) + (tr.imag() >= 0 ? "+" : "") +
                            std::to_string(tr.imag()) + "i");
        }
        const double lowest = hermitian_eigenvalues(m).minCoeff();
        if (!(lowest >= tol::psd)) {
            throw Error(ErrorKind::NotPositiveSemidefinite, "minimum eigenvalue " + std::to_string(lowest));
        }
    }

   private:
    struct Trusted {};
    DensityMatrix(CMatrix entries, Trusted) : m_(std::move(entries)) {}

    CMatrix m_;

    friend DensityMatrix trusted_density(CMatrix);
};

// Results of trace-preserving, positivity-preserving maps applied to
// validated input skip re-validation.
inline DensityMatrix trusted_density(CMatrix m) {
    return DensityMatrix(std::move(m), DensityMatrix::Trusted{});
}

/// A density matrix on H_A (x) H_B. Composite index is alpha * dim_b + beta.
class BipartiteState {
   public:
    BipartiteState(DensityMatrix rho, Eigen::Index dim_a, Eigen::Index dim_b)
        : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {
        if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho_.dim()) {
            throw Error(ErrorKind::DimensionMismatch,
                        "dims (" + std::to_string(dim_a) + "," + std::to_string(dim_b) +
                            ") do not factor a matrix of size " + std::to_string(rho_.dim()));
        }
    }

    Eigen::Index dim_a() const { return dim_a_; }
    Eigen::Index dim_b() const { return dim_b_; }
    Eigen::Index dim(Side s) const { return s == Side::A ? dim_a_ : dim_b_; }
    Eigen::Index total_dim() const { return rho_.dim(); }
    const DensityMatrix &rho() const { return rho_; }
    const CMatrix &matrix() const { return rho_.matrix(); }

   private:
    DensityMatrix rho_;
    Eigen::Index dim_a_;
    Eigen::Index dim_b_;
};

inline BipartiteState make_bipartite(CMatrix entries, Eigen::Index dim_a, Eigen::Index dim_b) {
    if (dim_a < 1 || dim_b < 1 || entries.rows() != dim_a * dim_b || entries.cols() != dim_a * dim_b) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected a " + std::to_string(dim_a * dim_b) + "x" + std::to_string(dim_a * dim_b) +
                        " matrix, got " + std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
    }
    return BipartiteState(DensityMatrix(std::move(entries)), dim_a, dim_b);
}

namespace detail {
inline BipartiteState trusted_bipartite(CMatrix m, Eigen::Index dim_a, Eigen::Index dim_b) {
    return BipartiteState(trusted_density(std::move(m)), dim_a, dim_b);
}

inline CMatrix partial_trace_matrix(const CMatrix &m, Eigen::Index dim_a, Eigen::Index dim_b, Side keep) {
    if (keep == Side::A) {
        CMatrix out = CMatrix::Zero(dim_a, dim_a);
        for (Eigen::Index i = 0; i < dim_a; ++i)
            for (Eigen::Index j = 0; j < dim_a; ++j)
                for (Eigen::Index b = 0; b < dim_b; ++b) out(i, j) += m(i * dim_b + b, j * dim_b + b);
        return out;
    }
    CMatrix out = CMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    return out;
}
}  // namespace detail

inline DensityMatrix partial_trace(const BipartiteState &state, Side keep) {
    return trusted_density(detail::partial_trace_matrix(state.matrix(), state.dim_a(), state.dim_b(), keep));
}

inline BipartiteState tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return detail::trusted_bipartite(kron(a.matrix(), b.matrix()), a.dim(), b.dim());
}

/// tr(rho^2).
inline double purity(const CMatrix &m) { return m.cwiseAbs2().sum(); }
inline double purity(const DensityMatrix &rho) { return purity(rho.matrix()); }
inline double purity(const BipartiteState &state) { return purity(state.matrix()); }

/// F = sum_kl |k><l| (x) |l><k| on C^m (x) C^m.
inline CMatrix swap_operator(Eigen::Index m) {
    CMatrix f = CMatrix::Zero(m * m, m * m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l) f(k * m + l, l * m + k) = 1.0;
    return f;
}

/// M = (1/m) sum_kl |k><l| (x) |k><l|, the maximally entangled projector.
inline CMatrix max_entangled_projector(Eigen::Index m) {
    CMatrix p = CMatrix::Zero(m * m, m * m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l) p(k * m + k, l * m + l) = 1.0 / static_cast<double>(m);
    return p;
}

/// Werner state ((m - x) I + (m x - 1) F) / (m^3 - m), x in [-1, 1].
inline BipartiteState werner(Eigen::Index m, double x) {
    if (m < 2) throw Error(ErrorKind::Domain, "Werner dimension must be >= 2");
    if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "Werner parameter outside [-1, 1]");
    const double md = static_cast<double>(m);
    const double denom = md * md * md - md;
    CMatrix rho = ((md - x) / denom) * CMatrix::Identity(m * m, m * m) + ((md * x - 1.0) / denom) * swap_operator(m);
    return make_bipartite(std::move(rho), m, m);
}

/// Isotropic state ((1 - x) I + (m^2 x - 1) M) / (m^2 - 1), x in [0, 1].
inline BipartiteState isotropic(Eigen::Index m, double x) {
    if (m < 2) throw Error(ErrorKind::Domain, "isotropic dimension must be >= 2");
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "isotropic parameter outside [0, 1]");
    const double md = static_cast<double>(m);
    const double denom = md * md - 1.0;
    CMatrix rho = ((1.0 - x) / denom) * CMatrix::Identity(m * m, m * m) +
                  ((md * md * x - 1.0) / denom) * max_entangled_projector(m);
    return make_bipartite(std::move(rho), m, m);
}

/// Two-qubit state data: local Bloch vectors x, y and correlation tensor t,
/// rho = (I + x.sigma (x) I + I (x) y.sigma + sum t_ij sigma_i (x) sigma_j) / 4.
struct TwoQubitBloch {
    Vec3 x = Vec3::Zero();
    Vec3 y = Vec3::Zero();
    Mat3 t = Mat3::Zero();
};

inline BipartiteState from_bloch(const TwoQubitBloch &b) {
    constexpr double slack = 1.0 + 1e-10;
    if (b.x.norm() > slack || b.y.norm() > slack) {
        throw Error(ErrorKind::NotPositiveSemidefinite, "local Bloch vector longer than 1");
    }
    const auto &s = pauli();
    const CMatrix id = CMatrix::Identity(2, 2);
    CMatrix rho = CMatrix::Identity(4, 4);
    for (int i = 0; i < 3; ++i) {
        rho += b.x(i) * kron(s[i], id);
        rho += b.y(i) * kron(id, s[i]);
        for (int j = 0; j < 3; ++j) rho += b.t(i, j) * kron(s[i], s[j]);
    }
    rho *= 0.25;
    return make_bipartite(std::move(rho), 2, 2);
}

namespace detail {
inline double real_coefficient(Complex c, const char *what) {
    if (!(std::abs(c.imag()) <= tol::residue)) {
        throw Error(ErrorKind::NumericalResidue,
                    std::string(what) + " has imaginary part " + std::to_string(c.imag()));
    }
    return c.real();
}
}  // namespace detail

inline TwoQubitBloch to_bloch(const BipartiteState &state) {
    if (state.dim_a() != 2 || state.dim_b() != 2) {
        throw Error(ErrorKind::DimensionMismatch, "Bloch parametrization needs dims (2,2)");
    }
    const auto &s = pauli();
    const CMatrix id = CMatrix::Identity(2, 2);
    const CMatrix &rho = state.matrix();
    TwoQubitBloch b;
    for (int i = 0; i < 3; ++i) {
        b.x(i) = detail::real_coefficient((rho * kron(s[i], id)).trace(), "x coefficient");
        b.y(i) = detail::real_coefficient((rho * kron(id, s[i])).trace(), "y coefficient");
        for (int j = 0; j < 3; ++j) {
            b.t(i, j) = detail::real_coefficient((rho * kron(s[i], s[j])).trace(), "T coefficient");
        }
    }
    return b;
}

/// Checks p >= 0 entrywise and sum p = 1, both to 1e-12.
inline void validate_distribution(const RMatrix &p) {
    if (p.size() == 0) throw Error(ErrorKind::InvalidDistribution, "empty distribution");
    if (!(p.minCoeff() >= -1e-12)) throw Error(ErrorKind::InvalidDistribution, "negative probability");
    if (!(std::abs(p.sum() - 1.0) <= 1e-12)) {
        throw Error(ErrorKind::InvalidDistribution, "probabilities sum to " + std::to_string(p.sum()));
    }
}

/// sum_{alpha beta} p(alpha, beta) Pi_alpha (x) Pi_beta.
inline BipartiteState classical_classical(const RMatrix &p, const OrthonormalBasis &basis_a,
                                          const OrthonormalBasis &basis_b) {
    if (p.rows() != basis_a.dim() || p.cols() != basis_b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "probability table shape does not match the bases");
    }
    validate_distribution(p);
    const Eigen::Index na = basis_a.dim();
    const Eigen::Index nb = basis_b.dim();
    CMatrix rho = CMatrix::Zero(na * nb, na * nb);
    for (Eigen::Index a = 0; a < na; ++a) {
        for (Eigen::Index b = 0; b < nb; ++b) {
            const CVector v = kron(basis_a.unitary().col(a), basis_b.unitary().col(b));
            rho += p(a, b) * (v * v.adjoint());
        }
    }
    return make_bipartite(std::move(rho), na, nb);
}

/// G G^dagger / tr(G G^dagger) for a seeded complex Gaussian G of shape
/// (dim_a dim_b) x rank.
inline BipartiteState random_state(Eigen::Index dim_a, Eigen::Index dim_b, Eigen::Index rank, std::uint64_t seed) {
    const Eigen::Index n = dim_a * dim_b;
    if (dim_a < 1 || dim_b < 1) throw Error(ErrorKind::Domain, "dimensions must be positive");
    if (rank < 1 || rank > n) throw Error(ErrorKind::Domain, "rank must lie in [1, dim_a * dim_b]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    CMatrix g(n, rank);
    for (Eigen::Index j = 0; j < rank; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return make_bipartite(std::move(rho), dim_a, dim_b);
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the phases
/// of R's diagonal folded back in.
inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

}  // namespace qdiscord
