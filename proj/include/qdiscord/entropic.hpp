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

// Entropic discord. All values are in bits.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/qstate.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace qdiscord {

// Eigenvalues at or below this contribute nothing (0 log 0 = 0).
inline constexpr double kEntropyFloor = 1e-14;

/// -sum p log2 p over the entries of p; entries <= kEntropyFloor are skipped.
template <typename Derived>
double shannon_entropy(const Eigen::DenseBase<Derived> &p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double v = p.derived()(i);
        if (v > kEntropyFloor) h -= v * std::log2(v);
    }
    return h;
}

/// -tr(X log2 X) for a positive semidefinite matrix X that need not have
/// unit trace. Negative round-off eigenvalues are treated as zero.
inline double entropy_of(const CMatrix &x) { return shannon_entropy(hermitian_eigenvalues(x)); }

inline double entropy(const DensityMatrix &rho) { return entropy_of(rho.matrix()); }

/// S(rho_A) + S(rho_B) - S(rho_AB).
inline double mutual_information(const BipartiteState &state) {
    return entropy(partial_trace(state, Side::A)) + entropy(partial_trace(state, Side::B)) - entropy(state.rho());
}

namespace detail {
// Mutual information of a classical-classical state with joint distribution
// p (flattened alpha * dim_b + beta).
inline double classical_mutual_information(const RVector &p, Eigen::Index dim_a, Eigen::Index dim_b) {
    RVector pa = RVector::Zero(dim_a);
    RVector pb = RVector::Zero(dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a) {
        for (Eigen::Index b = 0; b < dim_b; ++b) {
            pa(a) += p(a * dim_b + b);
            pb(b) += p(a * dim_b + b);
        }
    }
    return shannon_entropy(pa) + shannon_entropy(pb) - shannon_entropy(p);
}
}  // namespace detail

/// Loss of mutual information under the two-sided measurement m,
/// I(rho) - I(sum Pi_ab rho Pi_ab).
inline double measured_loss_two_sided(const BipartiteState &state, const ProductMeasurement &m) {
    detail::check_measurement_dims(state, m);
    const RVector p = detail::product_diagonal(state.matrix(), m.basis_a.unitary(), m.basis_b.unitary());
    return mutual_information(state) - detail::classical_mutual_information(p, state.dim_a(), state.dim_b());
}

struct LossSplit {
    double loss_a = 0.0;  // A-side dephasing of rho
    double loss_b = 0.0;  // B-side dephasing of the A-dephased state
};

/// Splits the two-sided loss through the intermediate state
/// rho_1 = sum_a (Pi_a (x) I) rho (Pi_a (x) I):
///   loss_a = [S(rho_1) - S(rho_1^A)] - [S(rho) - S(rho^A)]
///   loss_b = [S(rho~) - S(rho~^B)] - [S(rho_1) - S(rho_1^B)]
/// Each term is a one-sided conditional-entropy loss, hence nonnegative.
inline LossSplit loss_split(const BipartiteState &state, const ProductMeasurement &m) {
    detail::check_measurement_dims(state, m);
    const BipartiteState rho1 = dephase_one_sided(state, m.basis_a, Side::A);
    const BipartiteState rho2 = dephase_one_sided(rho1, m.basis_b, Side::B);
    const double s0 = entropy(state.rho());
    const double s1 = entropy(rho1.rho());
    const double s2 = entropy(rho2.rho());
    LossSplit out;
    out.loss_a = (s1 - entropy(partial_trace(rho1, Side::A))) - (s0 - entropy(partial_trace(state, Side::A)));
    out.loss_b = (s2 - entropy(partial_trace(rho2, Side::B))) - (s1 - entropy(partial_trace(rho1, Side::B)));
    return out;
}

struct DiscordValue {
    double value = 0.0;
    ProductMeasurement optimal_measurement;
    std::optional<Side> measured_side;  // set for one-sided values
    OptimizationResult optimizer_report;
};

namespace detail {
// S(rho~) - S(rho~^side) for the one-sided dephasing in basis u: the
// conditional entropy left after measuring `side`.
inline double post_measurement_conditional_entropy(const CMatrix &rho, const CMatrix &u, Side side,
                                                   Eigen::Index na, Eigen::Index nb) {
    const CMatrix w = local_unitary(u, side, na, nb);
    const CMatrix r = w.adjoint() * rho * w;
    const Eigen::Index n_meas = side == Side::A ? na : nb;
    const Eigen::Index n_rest = side == Side::A ? nb : na;
    RVector probs(n_meas);
    double joint = 0.0;
    CMatrix block(n_rest, n_rest);
    for (Eigen::Index k = 0; k < n_meas; ++k) {
        for (Eigen::Index i = 0; i < n_rest; ++i) {
            for (Eigen::Index j = 0; j < n_rest; ++j) {
                block(i, j) = side == Side::A ? r(k * nb + i, k * nb + j) : r(i * nb + k, j * nb + k);
            }
        }
        probs(k) = block.trace().real();
        joint += entropy_of(block);
    }
    return joint - shannon_entropy(probs);
}
}  // namespace detail

/// D_side = S(rho^side) - S(rho) + min over bases of [S(rho~) - S(rho~^side)].
/// The minimum is the best found by the multistart search, so the value is
/// an upper estimate of the true discord.
inline DiscordValue discord_one_sided(const BipartiteState &state, Side side, const OptimizerConfig &cfg,
                                      const std::vector<std::vector<double>> &warm_starts = {}) {
    const CMatrix &rho = state.matrix();
    const Eigen::Index na = state.dim_a();
    const Eigen::Index nb = state.dim_b();
    BasisObjective f = [&rho, side, na, nb](const OrthonormalBasis &b) {
        return -detail::post_measurement_conditional_entropy(rho, b.unitary(), side, na, nb);
    };
    OptimizationResult opt = maximize_over_basis(f, state.dim(side), cfg, warm_starts);
    const double value = entropy(partial_trace(state, side)) - entropy(state.rho()) - opt.best_value;
    OrthonormalBasis best = trusted_basis(unitary_from_params(opt.best_params, state.dim(side)));
    ProductMeasurement m = side == Side::A ? ProductMeasurement{best, computational_basis(nb)}
                                           : ProductMeasurement{computational_basis(na), best};
    return DiscordValue{value, std::move(m), side, std::move(opt)};
}

/// D_AB = I(rho) - max over product bases of I(rho~): the smallest loss of
/// mutual information under a two-sided projective measurement (best found).
inline DiscordValue discord_two_sided(const BipartiteState &state, const OptimizerConfig &cfg,
                                      const std::vector<std::vector<double>> &warm_starts = {}) {
    const Eigen::Index na = state.dim_a();
    const Eigen::Index nb = state.dim_b();
    const auto retained = [na, nb](const RVector &p) { return detail::classical_mutual_information(p, na, nb); };
    OptimizationResult opt = maximize_over_product_distributions(retained, state.matrix(), na, nb, cfg, warm_starts);
    const double value = mutual_information(state) - opt.best_value;
    ProductMeasurement m = product_measurement_from_params(opt.best_params, na, nb);
    return DiscordValue{value, std::move(m), std::nullopt, std::move(opt)};
}

}  // namespace qdiscord
