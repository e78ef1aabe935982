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

// Search over measurement bases.
//
// Bases are parametrized through the exponential map of anti-Hermitian
// matrices and refined with a derivative-free Hooke-Jeeves pattern search.
// Restarts are independent: each one draws its start from a generator keyed
// on (seed, restart index), so the reduction (best value, lowest index on
// ties) is reproducible no matter how restarts are scheduled.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qdiscord {

struct OptimizerConfig {
    int restarts = 64;
    int max_iterations = 500;
    double step_tolerance = 1e-10;
    double value_tolerance = 1e-12;
    std::uint64_t seed = 0;

    void validate() const {
        if (restarts < 1) throw Error(ErrorKind::Domain, "restarts must be >= 1");
        if (max_iterations < 1) throw Error(ErrorKind::Domain, "max_iterations must be >= 1");
        if (!(step_tolerance > 0) || !(value_tolerance > 0)) {
            throw Error(ErrorKind::Domain, "tolerances must be positive");
        }
    }
};

struct OptimizationResult {
    double best_value = 0.0;
    std::vector<double> best_params;
    int best_restart = -1;
    int restarts_run = 0;
    long iterations_total = 0;
    long evaluations_total = 0;
    bool converged = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

/// Runs fn(i) for i in [0, count), spread over the available hardware
/// threads. Results must be written to per-index slots by fn.
template <typename Fn>
void for_each_index(int count, Fn &&fn) {
    const int workers = std::min<int>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto &t : pool) t.join();
}

}  // namespace detail

/// U = exp(K) with K anti-Hermitian. Layout of params (length n^2): the
/// n(n-1)/2 real parts of K_jk (j < k, row-major), then the n(n-1)/2
/// imaginary parts of K_jk, then the n diagonal phases. params = 0 gives I.
inline CMatrix unitary_from_params(std::span<const double> params, Eigen::Index n) {
    if (n < 1 || static_cast<Eigen::Index>(params.size()) != n * n) {
        throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(n * n) + " parameters, got " +
                                                      std::to_string(params.size()));
    }
    if (n == 1) return CMatrix::Constant(1, 1, std::polar(1.0, params[0]));
    // H = -i K is Hermitian; exp(K) = exp(i H) = V exp(i Lambda) V^dagger.
    const Eigen::Index pairs = n * (n - 1) / 2;
    CMatrix h = CMatrix::Zero(n, n);
    Eigen::Index idx = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k, ++idx) {
            const double re = params[idx];
            const double im = params[pairs + idx];
            h(j, k) = Complex(im, -re);
            h(k, j) = std::conj(h(j, k));
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) h(j, j) = params[2 * pairs + j];
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    const RVector &lam = solver.eigenvalues();
    CVector phases(n);
    for (Eigen::Index j = 0; j < n; ++j) phases(j) = std::polar(1.0, lam(j));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

namespace detail {

struct LocalSearchOutcome {
    std::vector<double> params;
    double value = 0.0;
    int iterations = 0;
    long evaluations = 0;
    bool converged = false;
};

/// Hooke-Jeeves pattern search (maximization) with halving steps.
template <typename Objective>
LocalSearchOutcome pattern_search(Objective &objective, std::vector<double> start, double initial_step,
                                  const OptimizerConfig &cfg) {
    LocalSearchOutcome out;
    long evals = 0;
    auto eval = [&](const std::vector<double> &p) {
        ++evals;
        return objective(std::span<const double>(p));
    };
    // Coordinate exploration around `point`, whose value is `value`.
    auto explore = [&](std::vector<double> point, double value, double step) {
        for (std::size_t k = 0; k < point.size(); ++k) {
            const double saved = point[k];
            point[k] = saved + step;
            double v = eval(point);
            if (v > value) {
                value = v;
                continue;
            }
            point[k] = saved - step;
            v = eval(point);
            if (v > value) {
                value = v;
                continue;
            }
            point[k] = saved;
        }
        return std::pair{std::move(point), value};
    };

    std::vector<double> base = std::move(start);
    double base_value = eval(base);
    double step = initial_step;
    int iter = 0;
    bool converged = false;
    while (iter < cfg.max_iterations) {
        ++iter;
        auto [trial, trial_value] = explore(base, base_value, step);
        if (trial_value > base_value) {
            const double gain_start = base_value;
            std::vector<double> previous = std::move(base);
            base = std::move(trial);
            base_value = trial_value;
            // Pattern moves: keep extrapolating along the last displacement.
            while (iter < cfg.max_iterations) {
                std::vector<double> jump(base.size());
                for (std::size_t k = 0; k < base.size(); ++k) jump[k] = 2.0 * base[k] - previous[k];
                const double jump_value = eval(jump);
                auto [next, next_value] = explore(std::move(jump), jump_value, step);
                ++iter;
                if (!(next_value > base_value)) break;
                previous = std::move(base);
                base = std::move(next);
                base_value = next_value;
            }
            if (base_value - gain_start < cfg.value_tolerance && step < 1e-3) {
                converged = true;
                break;
            }
        } else {
            step *= 0.5;
            if (step < cfg.step_tolerance) {
                converged = true;
                break;
            }
        }
    }
    out.params = std::move(base);
    out.value = base_value;
    out.iterations = iter;
    out.evaluations = evals;
    out.converged = converged;
    return out;
}

/// Multistart driver: warm starts first (indices 0..w-1), then cfg.restarts
/// seeded random starts. `make_objective` returns a fresh callable per
/// restart so restarts never share mutable state.
template <typename MakeObjective>
OptimizationResult multistart(MakeObjective &&make_objective, std::size_t dimension,
                              const std::vector<std::vector<double>> &warm_starts, const OptimizerConfig &cfg) {
    cfg.validate();
    for (const auto &w : warm_starts) {
        if (w.size() != dimension) throw Error(ErrorKind::DimensionMismatch, "warm start has wrong length");
    }
    const int warm = static_cast<int>(warm_starts.size());
    const int total = warm + cfg.restarts;
    std::vector<LocalSearchOutcome> outcomes(total);
    std::vector<char> finished(total, 0);
    constexpr double pi = std::numbers::pi;

    for_each_index(total, [&](int i) {
        std::vector<double> start;
        double step;
        if (i < warm) {
            start = warm_starts[i];
            step = 0.05;
        } else {
            auto rng = restart_rng(cfg.seed, static_cast<std::uint64_t>(i - warm));
            std::uniform_real_distribution<double> unif(-pi, pi);
            start.resize(dimension);
            for (auto &v : start) v = unif(rng);
            step = 0.5;
        }
        auto objective = make_objective();
        try {
            outcomes[i] = pattern_search(objective, std::move(start), step, cfg);
            finished[i] = std::isfinite(outcomes[i].value) ? 1 : 0;
        } catch (const Error &) {
            finished[i] = 0;
        }
    });

    OptimizationResult result;
    result.restarts_run = total;
    for (int i = 0; i < total; ++i) {
        result.iterations_total += outcomes[i].iterations;
        result.evaluations_total += outcomes[i].evaluations;
        if (!finished[i]) continue;
        if (result.best_restart < 0 || outcomes[i].value > result.best_value + cfg.value_tolerance) {
            result.best_restart = i;
            result.best_value = outcomes[i].value;
            result.best_params = outcomes[i].params;
            result.converged = outcomes[i].converged;
        }
    }
    if (result.best_restart < 0) throw Error(ErrorKind::OptimizerFailure, "no restart completed");
    return result;
}

}  // namespace detail

using ProductObjective = std::function<double(const ProductMeasurement &)>;
using BasisObjective = std::function<double(const OrthonormalBasis &)>;

/// Splits a product-basis parameter vector into the two measurement bases.
inline ProductMeasurement product_measurement_from_params(std::span<const double> params, Eigen::Index dim_a,
                                                          Eigen::Index dim_b) {
    if (static_cast<Eigen::Index>(params.size()) != dim_a * dim_a + dim_b * dim_b) {
        throw Error(ErrorKind::DimensionMismatch, "product parameter vector has wrong length");
    }
    return ProductMeasurement{trusted_basis(unitary_from_params(params.first(dim_a * dim_a), dim_a)),
                              trusted_basis(unitary_from_params(params.subspan(dim_a * dim_a), dim_b))};
}

/// Parameters whose unitary is the identity on both sides.
inline std::vector<double> identity_params(Eigen::Index dim_a, Eigen::Index dim_b = 0) {
    return std::vector<double>(static_cast<std::size_t>(dim_a * dim_a + dim_b * dim_b), 0.0);
}

/// Maximizes objective over all product bases Pi_alpha (x) Pi_beta of
/// C^dim_a (x) C^dim_b. The returned value is the best found, not a
/// certified global maximum.
inline OptimizationResult maximize_over_product_bases(const ProductObjective &objective, Eigen::Index dim_a,
                                                      Eigen::Index dim_b, const OptimizerConfig &cfg,
                                                      const std::vector<std::vector<double>> &warm_starts = {}) {
    const std::size_t na2 = static_cast<std::size_t>(dim_a * dim_a);
    const std::size_t nb2 = static_cast<std::size_t>(dim_b * dim_b);
    auto make = [&] {
        // Caches each side's unitary; coordinate moves touch only one side.
        struct Cached {
            const ProductObjective *f;
            Eigen::Index na, nb;
            std::size_t na2;
            std::vector<double> pa, pb;
            CMatrix ua, ub;
            double operator()(std::span<const double> p) {
                auto a = p.first(na2);
                auto b = p.subspan(na2);
                if (pa.empty() || !std::equal(a.begin(), a.end(), pa.begin())) {
                    pa.assign(a.begin(), a.end());
                    ua = unitary_from_params(a, na);
                }
                if (pb.empty() || !std::equal(b.begin(), b.end(), pb.begin())) {
                    pb.assign(b.begin(), b.end());
                    ub = unitary_from_params(b, nb);
                }
                return (*f)(ProductMeasurement{trusted_basis(ua), trusted_basis(ub)});
            }
        };
        return Cached{&objective, dim_a, dim_b, na2, {}, {}, {}, {}};
    };
    return detail::multistart(make, na2 + nb2, warm_starts, cfg);
}

/// Single-basis counterpart of maximize_over_product_bases.
inline OptimizationResult maximize_over_basis(const BasisObjective &objective, Eigen::Index dim,
                                              const OptimizerConfig &cfg,
                                              const std::vector<std::vector<double>> &warm_starts = {}) {
    auto make = [&] {
        return [&objective, dim](std::span<const double> p) {
            return objective(trusted_basis(unitary_from_params(p, dim)));
        };
    };
    return detail::multistart(make, static_cast<std::size_t>(dim * dim), warm_starts, cfg);
}

namespace detail {

/// Evaluates p(alpha, beta) = <alpha beta|rho|alpha beta> from a product
/// parameter vector. Keeps the unitaries of both sides and, for whichever
/// side stayed fixed, the partially contracted blocks
///   B_alpha = (<alpha| (x) I) rho (|alpha> (x) I)   (n_B x n_B), or
///   C_beta  = (I (x) <beta|) rho (I (x) |beta>)     (n_A x n_A),
/// so a coordinate move on one side costs O(n_A n_B n^2) instead of O(N^3).
class ProductDiagonalEvaluator {
   public:
    ProductDiagonalEvaluator(const CMatrix &rho, Eigen::Index dim_a, Eigen::Index dim_b)
        : rho_(&rho), na_(dim_a), nb_(dim_b), p_(dim_a * dim_b) {}

    const RVector &operator()(std::span<const double> params) {
        const std::size_t na2 = static_cast<std::size_t>(na_ * na_);
        auto a = params.first(na2);
        auto b = params.subspan(na2);
        const bool a_changed = pa_.empty() || !std::equal(a.begin(), a.end(), pa_.begin());
        const bool b_changed = pb_.empty() || !std::equal(b.begin(), b.end(), pb_.begin());
        if (a_changed) {
            pa_.assign(a.begin(), a.end());
            ua_ = unitary_from_params(a, na_);
            blocks_a_valid_ = false;
        }
        if (b_changed) {
            pb_.assign(b.begin(), b.end());
            ub_ = unitary_from_params(b, nb_);
            blocks_b_valid_ = false;
        }
        if (!a_changed && blocks_a_valid_) {
            from_blocks_a();
        } else if (!b_changed && blocks_b_valid_) {
            from_blocks_b();
        } else if (a_changed && !b_changed) {
            build_blocks_b();
            from_blocks_b();
        } else {
            build_blocks_a();
            from_blocks_a();
        }
        return p_;
    }

    const CMatrix &unitary_a() const { return ua_; }
    const CMatrix &unitary_b() const { return ub_; }

   private:
    void build_blocks_a() {
        const CMatrix &rho = *rho_;
        blocks_a_.assign(static_cast<std::size_t>(na_), CMatrix::Zero(nb_, nb_));
        for (Eigen::Index al = 0; al < na_; ++al) {
            CMatrix &blk = blocks_a_[static_cast<std::size_t>(al)];
            for (Eigen::Index i = 0; i < na_; ++i) {
                const Complex ci = std::conj(ua_(i, al));
                for (Eigen::Index k = 0; k < na_; ++k) {
                    blk.noalias() += (ci * ua_(k, al)) * rho.block(i * nb_, k * nb_, nb_, nb_);
                }
            }
        }
        blocks_a_valid_ = true;
    }

    void build_blocks_b() {
        const CMatrix &rho = *rho_;
        blocks_b_.assign(static_cast<std::size_t>(nb_), CMatrix::Zero(na_, na_));
        for (Eigen::Index be = 0; be < nb_; ++be) {
            CMatrix &blk = blocks_b_[static_cast<std::size_t>(be)];
            for (Eigen::Index i = 0; i < na_; ++i) {
                for (Eigen::Index k = 0; k < na_; ++k) {
                    // u_b^dagger rho_(i,k) u_b for the B block (i, k).
                    blk(i, k) = ub_.col(be).dot(rho.block(i * nb_, k * nb_, nb_, nb_) * ub_.col(be));
                }
            }
        }
        blocks_b_valid_ = true;
    }

    void from_blocks_a() {
        for (Eigen::Index al = 0; al < na_; ++al) {
            const CMatrix &blk = blocks_a_[static_cast<std::size_t>(al)];
            for (Eigen::Index be = 0; be < nb_; ++be) p_(al * nb_ + be) = ub_.col(be).dot(blk * ub_.col(be)).real();
        }
    }

    void from_blocks_b() {
        for (Eigen::Index be = 0; be < nb_; ++be) {
            const CMatrix &blk = blocks_b_[static_cast<std::size_t>(be)];
            for (Eigen::Index al = 0; al < na_; ++al) p_(al * nb_ + be) = ua_.col(al).dot(blk * ua_.col(al)).real();
        }
    }

    const CMatrix *rho_;
    Eigen::Index na_, nb_;
    std::vector<double> pa_, pb_;
    CMatrix ua_, ub_;
    std::vector<CMatrix> blocks_a_, blocks_b_;
    bool blocks_a_valid_ = false;
    bool blocks_b_valid_ = false;
    RVector p_;
};

}  // namespace detail

/// Maximizes f(p) over product bases, where p is the diagonal distribution
/// <alpha beta|rho|alpha beta> flattened as alpha * dim_b + beta. Same
/// search and reduction as maximize_over_product_bases, specialized for
/// objectives that depend on the measurement only through p.
inline OptimizationResult maximize_over_product_distributions(const std::function<double(const RVector &)> &f,
                                                              const CMatrix &rho, Eigen::Index dim_a,
                                                              Eigen::Index dim_b, const OptimizerConfig &cfg,
                                                              const std::vector<std::vector<double>> &warm_starts = {}) {
    if (rho.rows() != dim_a * dim_b) throw Error(ErrorKind::DimensionMismatch, "state does not match dims");
    auto make = [&] {
        return [&f, eval = detail::ProductDiagonalEvaluator(rho, dim_a, dim_b)](std::span<const double> p) mutable {
            return f(eval(p));
        };
    };
    return detail::multistart(make, static_cast<std::size_t>(dim_a * dim_a + dim_b * dim_b), warm_starts, cfg);
}

// ---------------------------------------------------------------------------
// Two-qubit Bloch-sphere search.

/// (a.x)^2 + (b.y)^2 + (a T b)^2 for unit vectors a, b.
inline double bloch_sup_term(const TwoQubitBloch &s, const Vec3 &a, const Vec3 &b) {
    const double ax = a.dot(s.x);
    const double by = b.dot(s.y);
    const double atb = a.dot(s.t * b);
    return ax * ax + by * by + atb * atb;
}

struct SphereMax {
    Vec3 a = Vec3::UnitZ();
    Vec3 b = Vec3::UnitZ();
    double value = 0.0;
    int restarts_run = 0;
    long iterations_total = 0;
};

namespace detail {

// Top eigenvector of u u^T + v v^T, or `fallback` when that matrix vanishes.
inline Vec3 top_direction(const Vec3 &u, const Vec3 &v, const Vec3 &fallback) {
    const Mat3 q = u * u.transpose() + v * v.transpose();
    if (q.norm() <= 1e-300) return fallback;
    Eigen::SelfAdjointEigenSolver<Mat3> solver(q);
    Vec3 e = solver.eigenvectors().col(2);
    return e / e.norm();
}

inline Vec3 unit_or(const Vec3 &v, const Vec3 &fallback) {
    const double n = v.norm();
    return n > 1e-12 ? Vec3(v / n) : fallback;
}

}  // namespace detail

/// Alternating maximization of (a.x)^2 + (b.y)^2 + (a T b)^2 over pairs of
/// unit vectors. Each half-step is the exact maximizer of a quadratic form
/// on the sphere, so the value never decreases along an iteration.
inline SphereMax alternating_sphere_max(const TwoQubitBloch &s, const OptimizerConfig &cfg) {
    cfg.validate();
    std::vector<Vec3> starts;
    if (s.t.norm() > 0) {
        Eigen::JacobiSVD<Mat3> svd(s.t, Eigen::ComputeFullV);
        starts.push_back(svd.matrixV().col(0));
    }
    starts.push_back(detail::unit_or(s.y, Vec3::UnitZ()));
    for (int r = 0; r < cfg.restarts; ++r) {
        auto rng = detail::restart_rng(cfg.seed, static_cast<std::uint64_t>(r));
        std::normal_distribution<double> normal;
        Vec3 v(normal(rng), normal(rng), normal(rng));
        starts.push_back(detail::unit_or(v, Vec3::UnitX()));
    }

    SphereMax best;
    best.value = -1.0;
    for (std::size_t r = 0; r < starts.size(); ++r) {
        Vec3 b = starts[r];
        Vec3 a = detail::top_direction(s.x, s.t * b, detail::unit_or(s.x, Vec3::UnitZ()));
        double value = bloch_sup_term(s, a, b);
        for (int it = 0; it < cfg.max_iterations; ++it) {
            ++best.iterations_total;
            b = detail::top_direction(s.y, s.t.transpose() * a, b);
            a = detail::top_direction(s.x, s.t * b, a);
            const double next = bloch_sup_term(s, a, b);
            const double change = next - value;
            value = std::max(value, next);
            if (change < cfg.value_tolerance) break;
        }
        if (value > best.value + cfg.value_tolerance) {
            best.value = value;
            best.a = a;
            best.b = b;
        }
    }
    best.restarts_run = static_cast<int>(starts.size());
    return best;
}

/// Points of a latitude-longitude grid on the unit sphere: polar angles
/// pi k / r (k = 0..r, poles included) times azimuths pi l / r
/// (l = 0..2r-1). Doubling r refines the grid while keeping every point.
inline std::vector<Vec3> sphere_grid(int resolution) {
    constexpr double pi = std::numbers::pi;
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>((resolution + 1) * 2 * resolution));
    for (int k = 0; k <= resolution; ++k) {
        const double theta = pi * k / resolution;
        for (int l = 0; l < 2 * resolution; ++l) {
            const double phi = pi * l / resolution;
            pts.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
        }
    }
    return pts;
}

/// Brute-force value of sup_{a,b} (a.x)^2 + (b.y)^2 + (a T b)^2. The a
/// sphere is enumerated on sphere_grid(resolution); for each grid point the
/// b maximum is the top eigenvalue of y y^T + (T^T a)(T^T a)^T, evaluated in
/// closed form through its 2x2 Gram matrix. The result never exceeds the
/// true supremum and never decreases along a doubling sequence of
/// resolutions.
inline double sphere_grid_oracle(const TwoQubitBloch &s, int resolution) {
    if (resolution < 8) throw Error(ErrorKind::Domain, "grid resolution must be >= 8");
    double best = 0.0;
    for (const Vec3 &a : sphere_grid(resolution)) {
        const double ax = a.dot(s.x);
        const Vec3 u = s.t.transpose() * a;
        const double g11 = s.y.squaredNorm();
        const double g22 = u.squaredNorm();
        const double g12 = s.y.dot(u);
        const double top = 0.5 * (g11 + g22) + std::hypot(0.5 * (g11 - g22), g12);
        best = std::max(best, ax * ax + top);
    }
    return best;
}

/// Exhaustive maximum of a product-basis objective over pairs of qubit
/// bases bloch_basis(a) (x) bloch_basis(b), a and b on sphere_grid(resolution).
/// Intended for (2,2) certification only; cost grows as resolution^4.
inline double product_basis_grid_max(const ProductObjective &objective, int resolution,
                                     ProductMeasurement *argmax = nullptr) {
    if (resolution < 2) throw Error(ErrorKind::Domain, "grid resolution must be >= 2");
    std::vector<OrthonormalBasis> bases;
    for (const Vec3 &v : sphere_grid(resolution)) bases.push_back(bloch_basis(v));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &ba : bases) {
        for (const auto &bb : bases) {
            ProductMeasurement m{ba, bb};
            const double v = objective(m);
            if (v > best) {
                best = v;
                if (argmax) *argmax = m;
            }
        }
    }
    return best;
}

}  // namespace qdiscord
