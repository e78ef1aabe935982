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

// Hilbert-Schmidt geometric discord.
//
// For fixed product bases the nearest classical-classical state is the
// two-sided dephasing of rho itself, so
//
//     D_AB^G(rho) = tr(rho^2) - sup ||sum Pi_ab rho Pi_ab||^2
//                 = tr(C C^T) - sup ||A C B^T||_F^2,
//
// where C holds the coefficients of rho in product Hermitian operator bases
// and the rows of A, B are the coefficient vectors of the measurement
// projectors. The supremum is searched numerically; every result carries the
// spectral lower bound tr(C C^T) - (sum of the largest eigenvalues of C C^T)
// so callers can bracket the true value.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdiscord {

/// tr[(r1 - r2)^2].
inline double hs_distance_sq(const BipartiteState &r1, const BipartiteState &r2) {
    if (r1.dim_a() != r2.dim_a() || r1.dim_b() != r2.dim_b()) {
        throw Error(ErrorKind::DimensionMismatch, "states live on different spaces");
    }
    return (r1.matrix() - r2.matrix()).cwiseAbs2().sum();
}

/// An orthonormal basis {X_i} of the real space of Hermitian dim x dim
/// matrices under <X, Y> = tr(X Y).
class HermitianOperatorBasis {
   public:
    explicit HermitianOperatorBasis(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) throw Error(ErrorKind::DimensionMismatch, "empty operator basis");
        dim_ = ops_.front().rows();
        if (static_cast<Eigen::Index>(ops_.size()) != dim_ * dim_) {
            throw Error(ErrorKind::DimensionMismatch, "operator basis needs dim^2 elements");
        }
        for (const auto &x : ops_) {
            if (x.rows() != dim_ || x.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "ragged operators");
            if (!(max_abs_entry(x - x.adjoint()) <= 1e-12)) {
                throw Error(ErrorKind::NonHermitian, "operator basis element is not Hermitian");
            }
        }
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            for (std::size_t j = 0; j < ops_.size(); ++j) {
                const double g = (ops_[i] * ops_[j]).trace().real();
                if (!(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-12)) {
                    throw Error(ErrorKind::Domain, "operator basis is not orthonormal");
                }
            }
        }
    }

    Eigen::Index dim() const { return dim_; }
    std::size_t size() const { return ops_.size(); }
    const CMatrix &operator[](std::size_t i) const { return ops_[i]; }
    const std::vector<CMatrix> &operators() const { return ops_; }

    /// Coefficients tr(H X_i) of a Hermitian matrix.
    RVector coefficients(const CMatrix &h) const {
        RVector c(static_cast<Eigen::Index>(ops_.size()));
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            c(static_cast<Eigen::Index>(i)) = (h * ops_[i]).trace().real();
        }
        return c;
    }

    CMatrix reconstruct(const RVector &c) const {
        CMatrix h = CMatrix::Zero(dim_, dim_);
        for (std::size_t i = 0; i < ops_.size(); ++i) h += c(static_cast<Eigen::Index>(i)) * ops_[i];
        return h;
    }

   private:
    Eigen::Index dim_ = 0;
    std::vector<CMatrix> ops_;
};

/// I / sqrt(d), then the normalized generalized Gell-Mann matrices: the
/// symmetric family (|j><k| + |k><j|)/sqrt(2) for j < k in row-major order,
/// the antisymmetric family (-i|j><k| + i|k><j|)/sqrt(2) in the same order,
/// and the diagonal family (sum_{j<l} |j><j| - l|l><l|)/sqrt(l(l+1)) for
/// l = 1..d-1. For d = 2 this is exactly {I, sigma_1, sigma_2, sigma_3}/sqrt(2).
inline HermitianOperatorBasis hermitian_operator_basis(Eigen::Index dim) {
    if (dim < 2) throw Error(ErrorKind::Domain, "operator basis dimension must be >= 2");
    const Complex i{0.0, 1.0};
    const double r2 = std::sqrt(2.0);
    std::vector<CMatrix> ops;
    ops.push_back(CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = j + 1; k < dim; ++k) {
            CMatrix x = CMatrix::Zero(dim, dim);
            x(j, k) = 1.0 / r2;
            x(k, j) = 1.0 / r2;
            ops.push_back(std::move(x));
        }
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = j + 1; k < dim; ++k) {
            CMatrix x = CMatrix::Zero(dim, dim);
            x(j, k) = -i / r2;
            x(k, j) = i / r2;
            ops.push_back(std::move(x));
        }
    }
    for (Eigen::Index l = 1; l < dim; ++l) {
        CMatrix x = CMatrix::Zero(dim, dim);
        const double norm = std::sqrt(static_cast<double>(l * (l + 1)));
        for (Eigen::Index j = 0; j < l; ++j) x(j, j) = 1.0 / norm;
        x(l, l) = -static_cast<double>(l) / norm;
        ops.push_back(std::move(x));
    }
    return HermitianOperatorBasis(std::move(ops));
}

struct CorrelationData {
    RMatrix c;
    HermitianOperatorBasis basis_a;
    HermitianOperatorBasis basis_b;
};

/// c_ij = tr(rho (X_i (x) Y_j)), so that rho = sum_ij c_ij X_i (x) Y_j.
inline CorrelationData correlation_matrix(const BipartiteState &state, const HermitianOperatorBasis &basis_a,
                                          const HermitianOperatorBasis &basis_b) {
    if (basis_a.dim() != state.dim_a() || basis_b.dim() != state.dim_b()) {
        throw Error(ErrorKind::DimensionMismatch, "operator bases do not match the state");
    }
    const Eigen::Index na = state.dim_a();
    const Eigen::Index nb = state.dim_b();
    const CMatrix &rho = state.matrix();
    RMatrix c(static_cast<Eigen::Index>(basis_a.size()), static_cast<Eigen::Index>(basis_b.size()));
    for (std::size_t i = 0; i < basis_a.size(); ++i) {
        // Partial contraction with X_i leaves an operator on B: sum_ab' X_i(a',a) rho(a b, a' b').
        CMatrix on_b = CMatrix::Zero(nb, nb);
        for (Eigen::Index a = 0; a < na; ++a) {
            for (Eigen::Index ap = 0; ap < na; ++ap) {
                const Complex xi = basis_a[i](ap, a);
                if (xi == Complex(0.0)) continue;
                on_b += xi * rho.block(a * nb, ap * nb, nb, nb);
            }
        }
        for (std::size_t j = 0; j < basis_b.size(); ++j) {
            const Complex v = (on_b * basis_b[j]).trace();
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                detail::real_coefficient(v, "correlation coefficient");
        }
    }
    return CorrelationData{std::move(c), basis_a, basis_b};
}

inline CorrelationData correlation_matrix(const BipartiteState &state) {
    return correlation_matrix(state, hermitian_operator_basis(state.dim_a()), hermitian_operator_basis(state.dim_b()));
}

/// A(alpha, i) = <alpha|X_i|alpha>: row alpha holds the coefficients of the
/// projector |alpha><alpha| in the operator basis.
inline RMatrix measurement_matrix(const OrthonormalBasis &basis, const HermitianOperatorBasis &ops) {
    if (basis.dim() != ops.dim()) throw Error(ErrorKind::DimensionMismatch, "basis and operator basis differ in dim");
    RMatrix a(basis.dim(), static_cast<Eigen::Index>(ops.size()));
    for (Eigen::Index alpha = 0; alpha < basis.dim(); ++alpha) {
        const CVector v = basis.vector(alpha);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            a(alpha, static_cast<Eigen::Index>(i)) = v.dot(ops[i] * v).real();
        }
    }
    return a;
}

/// tr(A C B^T B C^T A^T) = ||A C B^T||_F^2.
inline double correlation_objective(const CorrelationData &cd, const RMatrix &a_mat, const RMatrix &b_mat) {
    if (a_mat.cols() != cd.c.rows() || b_mat.cols() != cd.c.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "measurement matrices are not conformable with C");
    }
    return (a_mat * cd.c * b_mat.transpose()).squaredNorm();
}

/// ||sum_ab Pi_ab rho Pi_ab||^2 = sum_ab <ab|rho|ab>^2.
inline double dephased_purity(const BipartiteState &state, const ProductMeasurement &m) {
    detail::check_measurement_dims(state, m);
    return detail::product_diagonal(state.matrix(), m.basis_a.unitary(), m.basis_b.unitary()).squaredNorm();
}

namespace detail {
// Purity of the one-sided dephasing: squared norms of the diagonal blocks
// of rho in the rotated basis.
inline double one_sided_dephased_purity(const CMatrix &rho, const CMatrix &u, Side side, Eigen::Index na,
                                        Eigen::Index nb) {
    const CMatrix w = local_unitary(u, side, na, nb);
    const CMatrix r = w.adjoint() * rho * w;
    double sum = 0.0;
    if (side == Side::A) {
        for (Eigen::Index a = 0; a < na; ++a) sum += r.block(a * nb, a * nb, nb, nb).squaredNorm();
    } else {
        for (Eigen::Index b = 0; b < nb; ++b)
            for (Eigen::Index a = 0; a < na; ++a)
                for (Eigen::Index ap = 0; ap < na; ++ap) sum += std::norm(r(a * nb + b, ap * nb + b));
    }
    return sum;
}
}  // namespace detail

inline double one_sided_dephased_purity(const BipartiteState &state, const OrthonormalBasis &basis, Side side) {
    detail::check_basis_dim(state, basis, side);
    return detail::one_sided_dephased_purity(state.matrix(), basis.unitary(), side, state.dim_a(), state.dim_b());
}

/// tr(CC^T) minus the sum of the `count` largest eigenvalues of CC^T.
inline double spectral_bound(const CorrelationData &cd, Eigen::Index count) {
    const RMatrix cct = cd.c * cd.c.transpose();
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(cct, Eigen::EigenvaluesOnly);
    RVector lam = solver.eigenvalues();  // ascending
    double top = 0.0;
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(count, lam.size()); ++k) top += lam(lam.size() - 1 - k);
    return cct.trace() - top;
}

inline double lower_bound_two_sided(const CorrelationData &cd) {
    return spectral_bound(cd, std::min(cd.basis_a.dim(), cd.basis_b.dim()));
}

inline double lower_bound_one_sided(const CorrelationData &cd, Side side) {
    return spectral_bound(cd, side == Side::A ? cd.basis_a.dim() : cd.basis_b.dim());
}

struct GeoResult {
    double value = 0.0;
    ProductMeasurement optimal_measurement;
    std::optional<Side> measured_side;  // set for one-sided results
    double lower_bound = 0.0;
    OptimizationResult optimizer_report;
};

/// Two-sided geometric discord, purity minus the best dephased purity found.
/// Warm starts are product-basis parameter vectors (see
/// maximize_over_product_bases).
inline GeoResult geo_discord_two_sided(const BipartiteState &state, const OptimizerConfig &cfg,
                                       const std::vector<std::vector<double>> &warm_starts = {}) {
    const auto f = [](const RVector &p) { return p.squaredNorm(); };
    OptimizationResult opt =
        maximize_over_product_distributions(f, state.matrix(), state.dim_a(), state.dim_b(), cfg, warm_starts);
    ProductMeasurement best = product_measurement_from_params(opt.best_params, state.dim_a(), state.dim_b());
    GeoResult r{purity(state) - opt.best_value, std::move(best), std::nullopt,
                lower_bound_two_sided(correlation_matrix(state)), std::move(opt)};
    return r;
}

/// One-sided geometric discord ||rho - sum_a Pi_a rho Pi_a||^2 minimized over
/// bases of the measured side. The unmeasured side of optimal_measurement is
/// the computational basis.
inline GeoResult geo_discord_one_sided(const BipartiteState &state, Side side, const OptimizerConfig &cfg,
                                       const std::vector<std::vector<double>> &warm_starts = {}) {
    const CMatrix &rho = state.matrix();
    const Eigen::Index na = state.dim_a();
    const Eigen::Index nb = state.dim_b();
    BasisObjective f = [&rho, side, na, nb](const OrthonormalBasis &b) {
        return detail::one_sided_dephased_purity(rho, b.unitary(), side, na, nb);
    };
    OptimizationResult opt = maximize_over_basis(f, state.dim(side), cfg, warm_starts);
    OrthonormalBasis best = trusted_basis(unitary_from_params(opt.best_params, state.dim(side)));
    ProductMeasurement m = side == Side::A ? ProductMeasurement{best, computational_basis(nb)}
                                           : ProductMeasurement{computational_basis(na), best};
    return GeoResult{purity(state) - opt.best_value, std::move(m), side,
                     lower_bound_one_sided(correlation_matrix(state), side), std::move(opt)};
}

/// (m x - 1)^2 / (m (m - 1) (m + 1)^2) for the m x m Werner family.
inline double werner_geo_closed(Eigen::Index m, double x) {
    if (m < 2) throw Error(ErrorKind::Domain, "Werner dimension must be >= 2");
    if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "Werner parameter outside [-1, 1]");
    const double md = static_cast<double>(m);
    const double num = md * x - 1.0;
    return num * num / (md * (md - 1.0) * (md + 1.0) * (md + 1.0));
}

/// (m^2 x - 1)^2 / (m (m - 1) (m + 1)^2) for the m x m isotropic family.
inline double isotropic_geo_closed(Eigen::Index m, double x) {
    if (m < 2) throw Error(ErrorKind::Domain, "isotropic dimension must be >= 2");
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Domain, "isotropic parameter outside [0, 1]");
    const double md = static_cast<double>(m);
    const double num = md * md * x - 1.0;
    return num * num / (md * (md - 1.0) * (md + 1.0) * (md + 1.0));
}

/// (a.x)^2 + (b.y)^2 + (a T b)^2, the quantity maximized in the two-qubit form
/// D_AB^G = [|x|^2 + |y|^2 + tr(T T^T)]/4 - sup(...)/4.
inline double two_qubit_geo_objective(const TwoQubitBloch &s, const Vec3 &a, const Vec3 &b) {
    if (!(std::abs(a.norm() - 1.0) <= tol::unit_vector) || !(std::abs(b.norm() - 1.0) <= tol::unit_vector)) {
        throw Error(ErrorKind::NotUnitVector, "measurement directions must be unit vectors");
    }
    return bloch_sup_term(s, a, b);
}

enum class TwoQubitPath { NoCorrelationTensor, ZeroMarginals, ProductState, Alternating };

inline const char *to_string(TwoQubitPath p) {
    switch (p) {
        case TwoQubitPath::NoCorrelationTensor: return "T=0";
        case TwoQubitPath::ZeroMarginals: return "x=y=0";
        case TwoQubitPath::ProductState: return "T=xy^T";
        case TwoQubitPath::Alternating: return "alternating";
    }
    return "?";
}

/// Which route two_qubit_geo takes for the given data. The special cases
/// are recognized only when they hold to 1e-12.
inline TwoQubitPath two_qubit_path(const TwoQubitBloch &s) {
    constexpr double exact = 1e-12;
    if (s.t.norm() <= exact) return TwoQubitPath::NoCorrelationTensor;
    if (s.x.norm() <= exact && s.y.norm() <= exact) return TwoQubitPath::ZeroMarginals;
    if ((s.t - s.x * s.y.transpose()).norm() <= exact) return TwoQubitPath::ProductState;
    return TwoQubitPath::Alternating;
}

/// Two-sided geometric discord of a two-qubit state from its Bloch data.
inline GeoResult two_qubit_geo(const TwoQubitBloch &s, const OptimizerConfig &cfg) {
    const BipartiteState state = from_bloch(s);  // physicality check
    const double total = s.x.squaredNorm() + s.y.squaredNorm() + (s.t * s.t.transpose()).trace();
    Vec3 a = detail::unit_or(s.x, Vec3::UnitZ());
    Vec3 b = detail::unit_or(s.y, Vec3::UnitZ());
    double value = 0.0;
    OptimizationResult report;
    report.restarts_run = 0;
    report.converged = true;
    switch (two_qubit_path(s)) {
        case TwoQubitPath::NoCorrelationTensor:
        case TwoQubitPath::ProductState:
            value = 0.0;
            break;
        case TwoQubitPath::ZeroMarginals: {
            Eigen::JacobiSVD<Mat3> svd(s.t, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const double smax = svd.singularValues()(0);
            a = svd.matrixU().col(0);
            b = svd.matrixV().col(0);
            value = 0.25 * (total - smax * smax);
            break;
        }
        case TwoQubitPath::Alternating: {
            const SphereMax best = alternating_sphere_max(s, cfg);
            a = best.a;
            b = best.b;
            value = 0.25 * (total - best.value);
            report.best_value = best.value;
            report.restarts_run = best.restarts_run;
            report.iterations_total = best.iterations_total;
            break;
        }
    }
    report.best_value = 0.25 * (1.0 + total) - value;
    return GeoResult{value, ProductMeasurement{bloch_basis(a), bloch_basis(b)}, std::nullopt,
                     lower_bound_two_sided(correlation_matrix(state)), std::move(report)};
}

}  // namespace qdiscord
