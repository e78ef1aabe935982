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

// Reference-value verification table.
//
// Criteria:
//   1  Werner closed form against the optimizer, m = 2, 3, 4
//   2  isotropic closed form against the optimizer, m = 2, 3, 4
//   3  Bell state by independent routes
//   4  two-qubit special cases
//   5  loss nonnegativity and the sequential split
//   6  zero set: classical-classical and product states
//   7  lower bounds and the one-sided/two-sided hierarchy
//   8  algebraic identities
//   9  alternating scheme against the sphere grid

#pragma once

#include "qdiscord/entropic.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/report.hpp"
#include "qdiscord/sampling.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace qdiscord::verify {

enum class Compare { Near, AtMost, AtLeast };

struct Check {
    int criterion = 0;
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Compare compare = Compare::Near;
    bool pass = false;
};

inline bool evaluate(double measured, double expected, double tol, Compare c) {
    if (!std::isfinite(measured)) return false;
    switch (c) {
        case Compare::Near: return std::abs(measured - expected) <= tol;
        case Compare::AtMost: return measured <= expected + tol;
        case Compare::AtLeast: return measured >= expected - tol;
    }
    return false;
}

inline Check make_check(int criterion, std::string name, double measured, double expected, double tol,
                        Compare c = Compare::Near) {
    return Check{criterion, std::move(name), measured, expected, tol, c, evaluate(measured, expected, tol, c)};
}

inline const char *relation(Compare c) {
    switch (c) {
        case Compare::Near: return "within";
        case Compare::AtMost: return "at most";
        case Compare::AtLeast: return "at least";
    }
    return "?";
}

/// "PASS [3] name: measured=... expected=... within 1e-06"
inline std::string format_check(const Check &c) {
    std::string s = c.pass ? "PASS" : "FAIL";
    s += " [" + std::to_string(c.criterion) + "] " + c.name + ": measured=" + io::format_number(c.measured) +
         " expected=" + io::format_number(c.expected) + " " + relation(c.compare) + " " +
         io::format_number(c.tolerance);
    return s;
}

struct Options {
    OptimizerConfig cfg;
    bool quick = false;  // skips the m = 4 family sweeps
};

inline sampling::Rng criterion_rng(const Options &o, int criterion) {
    return detail::restart_rng(o.cfg.seed ^ 0x5DEECE66DULL, static_cast<std::uint64_t>(criterion));
}

inline std::vector<Eigen::Index> family_dims(const Options &o) {
    return o.quick ? std::vector<Eigen::Index>{2, 3} : std::vector<Eigen::Index>{2, 3, 4};
}

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::vector<Check> family_sweeps(const Options &o, Family family, int criterion) {
    std::vector<Check> out;
    const auto t0 = Clock::now();
    const double lo = family == Family::Werner ? -1.0 : 0.0;
    for (Eigen::Index m : family_dims(o)) {
        const SweepSpec spec{family, m, lo, 1.0, 21};
        double worst = 0.0;
        for (const SweepRow &row : run_sweep(spec, o.cfg)) worst = std::max(worst, row.abs_gap);
        out.push_back(make_check(criterion, std::string(to_string(family)) + " m=" + std::to_string(m) +
                                                " max |closed - numeric| over 21 points",
                                 worst, 0.0, 1e-6));
    }
    if (family == Family::Isotropic) {
        for (Eigen::Index m : {2, 3, 4}) {
            const double md = static_cast<double>(m);
            out.push_back(make_check(criterion, "isotropic m=" + std::to_string(m) + " closed form at x=1/m^2",
                                     isotropic_geo_closed(m, 1.0 / (md * md)), 0.0, 1e-10));
        }
    }
    out.push_back(make_check(criterion, std::string(to_string(family)) + " sweep runtime (s)", seconds_since(t0), 0.0,
                             60.0, Compare::AtMost));
    return out;
}

inline BipartiteState bell_state() {
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    return make_bipartite(std::move(rho), 2, 2);
}

inline std::vector<Check> bell_routes(const Options &o) {
    std::vector<Check> out;
    const BipartiteState bell = bell_state();
    const TwoQubitBloch s = to_bloch(bell);

    out.push_back(make_check(3, "Bell D_AB^G via dephased-purity optimizer", geo_discord_two_sided(bell, o.cfg).value,
                             0.5, 1e-6));

    const CorrelationData cd = correlation_matrix(bell);
    const ProductObjective corr_obj = [&cd](const ProductMeasurement &m) {
        return correlation_objective(cd, measurement_matrix(m.basis_a, cd.basis_a), measurement_matrix(m.basis_b, cd.basis_b));
    };
    const OptimizationResult r_corr = maximize_over_product_bases(corr_obj, 2, 2, o.cfg);
    out.push_back(make_check(3, "Bell D_AB^G via correlation-matrix objective", cd.c.squaredNorm() - r_corr.best_value,
                             0.5, 1e-6));

    const double total = s.x.squaredNorm() + s.y.squaredNorm() + (s.t * s.t.transpose()).trace();
    const SphereMax alt = alternating_sphere_max(s, o.cfg);
    out.push_back(make_check(3, "Bell D_AB^G via alternating sphere scheme", 0.25 * (total - alt.value), 0.5, 1e-6));

    const Mat3 ttt = s.t * s.t.transpose();
    Eigen::SelfAdjointEigenSolver<Mat3> eig(ttt, Eigen::EigenvaluesOnly);
    out.push_back(make_check(3, "Bell D_AB^G via (tr TT^T - lambda_max)/4",
                             0.25 * (ttt.trace() - eig.eigenvalues().maxCoeff()), 0.5, 1e-6));

    out.push_back(make_check(3, "Bell entropic D_AB via optimizer", discord_two_sided(bell, o.cfg).value, 1.0, 1e-4));
    const ProductObjective retained = [&bell](const ProductMeasurement &m) {
        return mutual_information(bell) - measured_loss_two_sided(bell, m);
    };
    out.push_back(make_check(3, "Bell entropic D_AB via product-basis grid",
                             mutual_information(bell) - product_basis_grid_max(retained, 12), 1.0, 1e-4));
    return out;
}

inline std::vector<Check> two_qubit_cases(const Options &o) {
    std::vector<Check> out;
    sampling::Rng rng = criterion_rng(o, 4);
    double worst_i = 0.0;
    double worst_i_direct = 0.0;
    double worst_iii = 0.0;
    double worst_ii = 0.0;
    for (int k = 0; k < 20; ++k) {
        const TwoQubitBloch s = sampling::uncorrelated_tensor_bloch(rng);
        worst_i = std::max(worst_i, std::abs(two_qubit_geo(s, o.cfg).value));
        // Measuring along x and y leaves the state unchanged.
        const BipartiteState st = from_bloch(s);
        const ProductMeasurement m{bloch_basis(detail::unit_or(s.x, Vec3::UnitZ())),
                                   bloch_basis(detail::unit_or(s.y, Vec3::UnitZ()))};
        worst_i_direct = std::max(worst_i_direct, hs_distance_sq(st, dephase_two_sided(st, m)));
    }
    for (int k = 0; k < 20; ++k) {
        const BipartiteState st = sampling::product_state(rng, 2, 2);
        worst_iii = std::max(worst_iii, std::abs(two_qubit_geo(to_bloch(st), o.cfg).value));
    }
    for (int k = 0; k < 20; ++k) {
        const TwoQubitBloch s = sampling::zero_marginal_bloch(rng);
        const double special = two_qubit_geo(s, o.cfg).value;
        const double generic = geo_discord_two_sided(from_bloch(s), o.cfg).value;
        worst_ii = std::max(worst_ii, std::abs(special - generic));
    }
    out.push_back(make_check(4, "T=0: max |D_AB^G| over 20 states", worst_i, 0.0, 1e-10));
    out.push_back(make_check(4, "T=0: max distance to dephasing along x, y over 20 states", worst_i_direct, 0.0, 1e-10));
    out.push_back(make_check(4, "T=xy^T: max |D_AB^G| over 20 product states", worst_iii, 0.0, 1e-10));
    out.push_back(make_check(4, "x=y=0: max |closed - optimizer| over 20 states", worst_ii, 0.0, 1e-6));
    return out;
}

inline std::vector<Check> loss_properties(const Options &o) {
    std::vector<Check> out;
    sampling::Rng rng = criterion_rng(o, 5);
    for (auto [na, nb, trials] : {std::tuple<Eigen::Index, Eigen::Index, int>{2, 2, 500}, {2, 3, 200}}) {
        double min_loss = INFINITY;
        double min_part = INFINITY;
        double max_sum_err = 0.0;
        for (int k = 0; k < trials; ++k) {
            const BipartiteState st = sampling::state(rng, na, nb);
            const ProductMeasurement m = sampling::measurement(rng, na, nb);
            const double loss = measured_loss_two_sided(st, m);
            const LossSplit split = loss_split(st, m);
            min_loss = std::min(min_loss, loss);
            min_part = std::min({min_part, split.loss_a, split.loss_b});
            max_sum_err = std::max(max_sum_err, std::abs(split.loss_a + split.loss_b - loss));
        }
        const std::string tag = "(" + std::to_string(na) + "," + std::to_string(nb) + ") x" + std::to_string(trials);
        out.push_back(make_check(5, tag + ": min mutual-information loss", min_loss, 0.0, 1e-9, Compare::AtLeast));
        out.push_back(make_check(5, tag + ": min split component", min_part, 0.0, 1e-9, Compare::AtLeast));
        out.push_back(make_check(5, tag + ": max |loss_a + loss_b - loss|", max_sum_err, 0.0, 1e-9));
    }
    return out;
}

inline std::vector<Check> zero_set(const Options &o) {
    sampling::Rng rng = criterion_rng(o, 6);
    double cc_geo = 0.0;
    double cc_ent = 0.0;
    double prod_geo = 0.0;
    double prod_ent = 0.0;
    for (int k = 0; k < 50; ++k) {
        const BipartiteState st = sampling::classical_classical_state(rng, 2, 2);
        cc_geo = std::max(cc_geo, geo_discord_two_sided(st, o.cfg).value);
        cc_ent = std::max(cc_ent, discord_two_sided(st, o.cfg).value);
    }
    for (int k = 0; k < 50; ++k) {
        const BipartiteState st = sampling::product_state(rng, 2, 2);
        prod_geo = std::max(prod_geo, geo_discord_two_sided(st, o.cfg).value);
        prod_ent = std::max(prod_ent, discord_two_sided(st, o.cfg).value);
    }
    return {make_check(6, "classical-classical x50: max D_AB^G", cc_geo, 0.0, 1e-8, Compare::AtMost),
            make_check(6, "classical-classical x50: max entropic D_AB", cc_ent, 0.0, 1e-6, Compare::AtMost),
            make_check(6, "product x50: max D_AB^G", prod_geo, 0.0, 1e-6, Compare::AtMost),
            make_check(6, "product x50: max entropic D_AB", prod_ent, 0.0, 1e-6, Compare::AtMost)};
}

inline std::vector<Check> bounds_hierarchy(const Options &o) {
    sampling::Rng rng = criterion_rng(o, 7);
    int v_lb = 0, v_hier = 0, v_lb_a = 0, v_lb_b = 0;
    for (int k = 0; k < 200; ++k) {
        const BipartiteState st = sampling::state(rng, 2, 2);
        const GeoResult ab = geo_discord_two_sided(st, o.cfg);
        const GeoResult a = geo_discord_one_sided(st, Side::A, o.cfg);
        const GeoResult b = geo_discord_one_sided(st, Side::B, o.cfg);
        v_lb += ab.value < ab.lower_bound - 1e-8;
        v_hier += ab.value < std::max(a.value, b.value) - 1e-6;
        v_lb_a += a.value < a.lower_bound - 1e-8;
        v_lb_b += b.value < b.lower_bound - 1e-8;
    }
    return {make_check(7, "x200: violations of D_AB^G >= two-sided bound", v_lb, 0, 0),
            make_check(7, "x200: violations of D_AB^G >= max(D_A^G, D_B^G)", v_hier, 0, 0),
            make_check(7, "x200: violations of D_A^G >= one-sided bound", v_lb_a, 0, 0),
            make_check(7, "x200: violations of D_B^G >= one-sided bound", v_lb_b, 0, 0)};
}

/// Residual of
///   ||rho - chi_p||^2 = purity - sum d^2 + sum (p - d)^2,  d = diag in the product basis.
inline double quadratic_completion_residual(const BipartiteState &st, const ProductMeasurement &m, const RMatrix &p) {
    const BipartiteState chi = classical_classical(p, m.basis_a, m.basis_b);
    const RMatrix d = diagonal_distribution(st, m);
    const double rhs = purity(st) - d.squaredNorm() + (p - d).squaredNorm();
    return std::abs(hs_distance_sq(st, chi) - rhs);
}

inline std::vector<Check> identities(const Options &o) {
    sampling::Rng rng = criterion_rng(o, 8);
    const std::array<std::pair<Eigen::Index, Eigen::Index>, 3> dims{{{2, 2}, {2, 3}, {3, 3}}};
    double obj = 0.0;
    double cct = 0.0;
    double completion_worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto [na, nb] = dims[static_cast<std::size_t>(k % 3)];
        const BipartiteState st = sampling::state(rng, na, nb);
        const ProductMeasurement m = sampling::measurement(rng, na, nb);
        const CorrelationData cd = correlation_matrix(st);
        const double lhs =
            correlation_objective(cd, measurement_matrix(m.basis_a, cd.basis_a), measurement_matrix(m.basis_b, cd.basis_b));
        obj = std::max(obj, std::abs(lhs - dephased_purity(st, m)));
        cct = std::max(cct, std::abs((cd.c * cd.c.transpose()).trace() - purity(st)));
    }
    for (int k = 0; k < 200; ++k) {
        const auto [na, nb] = dims[static_cast<std::size_t>(k % 3)];
        const BipartiteState st = sampling::state(rng, na, nb);
        const ProductMeasurement m = sampling::measurement(rng, na, nb);
        completion_worst = std::max(completion_worst, quadratic_completion_residual(st, m, sampling::distribution(rng, na, nb)));
    }
    return {make_check(8, "x500: max |correlation_objective - dephased purity|", obj, 0.0, 1e-12),
            make_check(8, "x500: max |tr(CC^T) - purity|", cct, 0.0, 1e-12),
            make_check(8, "x200: max quadratic-completion residual", completion_worst, 0.0, 1e-12)};
}

inline std::vector<Check> sphere_certification(const Options &o) {
    sampling::Rng rng = criterion_rng(o, 9);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const TwoQubitBloch s = to_bloch(sampling::state(rng, 2, 2));
        worst = std::max(worst, std::abs(alternating_sphere_max(s, o.cfg).value - sphere_grid_oracle(s, 400)));
    }
    return {make_check(9, "x50: max |alternating - grid(400)| of the sphere objective", worst, 0.0, 2e-4)};
}

inline const std::vector<std::function<std::vector<Check>(const Options &)>> &criteria() {
    static const std::vector<std::function<std::vector<Check>(const Options &)>> table{
        [](const Options &o) { return family_sweeps(o, Family::Werner, 1); },
        [](const Options &o) { return family_sweeps(o, Family::Isotropic, 2); },
        bell_routes,
        two_qubit_cases,
        loss_properties,
        zero_set,
        bounds_hierarchy,
        identities,
        sphere_certification,
    };
    return table;
}

inline constexpr int kCriteria = 9;

/// Runs criterion `index` (1-based).
inline std::vector<Check> run_criterion(int index, const Options &o) {
    if (index < 1 || index > kCriteria) throw Error(ErrorKind::Domain, "criterion index out of range");
    return criteria()[static_cast<std::size_t>(index - 1)](o);
}

/// Runs every criterion, streaming one line per check to `out` when given,
/// and appends a total-runtime check (5 minutes, or 60 s in quick mode).
inline std::vector<Check> run_all(const Options &o, std::ostream *out = nullptr) {
    const auto t0 = Clock::now();
    std::vector<Check> all;
    for (int i = 1; i <= kCriteria; ++i) {
        for (Check &c : run_criterion(i, o)) {
            if (out) *out << format_check(c) << '\n' << std::flush;
            all.push_back(std::move(c));
        }
    }
    Check total = make_check(9, o.quick ? "quick verify runtime (s)" : "verify runtime (s)", seconds_since(t0), 0.0,
                             o.quick ? 60.0 : 300.0, Compare::AtMost);
    if (out) *out << format_check(total) << '\n';
    all.push_back(std::move(total));
    return all;
}

inline bool all_pass(const std::vector<Check> &checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

}  // namespace qdiscord::verify
