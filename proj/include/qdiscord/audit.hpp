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

// Randomized invariant audit. Every check is phrased as a slack that must
// be nonnegative; the report keeps the smallest slack seen per invariant.

#pragma once

#include "qdiscord/entropic.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/sampling.hpp"
#include "qdiscord/verify.hpp"

#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qdiscord::audit {

struct InvariantStats {
    std::string name;
    long checked = 0;
    long violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
};

class AuditReport {
   public:
    void record(const std::string &name, double slack) {
        auto it = index_.find(name);
        if (it == index_.end()) {
            it = index_.emplace(name, stats_.size()).first;
            stats_.push_back(InvariantStats{name});
        }
        InvariantStats &s = stats_[it->second];
        ++s.checked;
        if (!(slack >= 0.0)) ++s.violations;
        s.worst_margin = std::min(s.worst_margin, slack);
    }

    /// In order of first appearance.
    const std::vector<InvariantStats> &invariants() const { return stats_; }

    long total_violations() const {
        long n = 0;
        for (const auto &s : stats_) n += s.violations;
        return n;
    }

   private:
    std::vector<InvariantStats> stats_;
    std::map<std::string, std::size_t> index_;
};

struct AuditSpec {
    int n_states = 500;
    std::uint64_t seed = 0;
    Eigen::Index dim_a = 2;
    Eigen::Index dim_b = 2;

    void validate() const {
        if (n_states < 0) throw Error(ErrorKind::Domain, "n_states must be >= 0");
        if (dim_a < 2 || dim_b < 2) throw Error(ErrorKind::Domain, "audit dimensions must be >= 2");
    }
};

/// Checks every per-state invariant on one state with one random product
/// measurement and one random distribution.
inline void audit_state(AuditReport &rep, const BipartiteState &st, sampling::Rng &rng, const OptimizerConfig &cfg) {
    const Eigen::Index na = st.dim_a();
    const Eigen::Index nb = st.dim_b();
    const ProductMeasurement m = sampling::measurement(rng, na, nb);
    const double p0 = purity(st);

    // Dephasing channels.
    const BipartiteState deph_a = dephase_one_sided(st, m.basis_a, Side::A);
    const BipartiteState deph_ab = dephase_two_sided(st, m);
    const BipartiteState a_then_b = dephase_one_sided(deph_a, m.basis_b, Side::B);
    const BipartiteState b_then_a = dephase_one_sided(dephase_one_sided(st, m.basis_b, Side::B), m.basis_a, Side::A);
    rep.record("two-sided dephasing = A then B",
               1e-12 - max_abs_entry(a_then_b.matrix() - deph_ab.matrix()));
    rep.record("two-sided dephasing = B then A",
               1e-12 - max_abs_entry(b_then_a.matrix() - deph_ab.matrix()));
    rep.record("dephasing idempotent",
               1e-12 - max_abs_entry(dephase_two_sided(deph_ab, m).matrix() - deph_ab.matrix()));
    rep.record("B marginal kept by A dephasing",
               1e-12 - max_abs_entry(partial_trace(deph_a, Side::B).matrix() - partial_trace(st, Side::B).matrix()));
    rep.record("A marginal kept by B dephasing",
               1e-12 - max_abs_entry(partial_trace(a_then_b, Side::A).matrix() - partial_trace(deph_a, Side::A).matrix()));
    rep.record("dephasing does not raise purity", p0 + 1e-12 - purity(deph_ab));

    // Entropic loss.
    const double mi = mutual_information(st);
    const double loss = measured_loss_two_sided(st, m);
    const LossSplit split = loss_split(st, m);
    rep.record("mutual information >= 0", mi + 1e-9);
    rep.record("mutual-information loss >= 0", loss + 1e-9);
    rep.record("split component A >= 0", split.loss_a + 1e-9);
    rep.record("split component B >= 0", split.loss_b + 1e-9);
    rep.record("split sums to loss", 1e-9 - std::abs(split.loss_a + split.loss_b - loss));

    // Correlation matrix identities.
    const CorrelationData cd = correlation_matrix(st);
    rep.record("tr(CC^T) = purity", 1e-12 - std::abs(cd.c.squaredNorm() - p0));
    const double obj =
        correlation_objective(cd, measurement_matrix(m.basis_a, cd.basis_a), measurement_matrix(m.basis_b, cd.basis_b));
    rep.record("correlation_objective = dephased purity", 1e-12 - std::abs(obj - dephased_purity(st, m)));
    rep.record("quadratic completion",
               1e-12 - verify::quadratic_completion_residual(st, m, sampling::distribution(rng, na, nb)));

    // Optimized values.
    const GeoResult ab = geo_discord_two_sided(st, cfg);
    const GeoResult ga = geo_discord_one_sided(st, Side::A, cfg);
    const GeoResult gb = geo_discord_one_sided(st, Side::B, cfg);
    rep.record("D_AB^G >= two-sided bound", ab.value - ab.lower_bound + 1e-8);
    rep.record("D_A^G >= one-sided bound", ga.value - ga.lower_bound + 1e-8);
    rep.record("D_B^G >= one-sided bound", gb.value - gb.lower_bound + 1e-8);
    rep.record("D_AB^G >= max(D_A^G, D_B^G)", ab.value - std::max(ga.value, gb.value) + 1e-6);
    rep.record("D_AB^G <= loss at sampled bases", p0 - dephased_purity(st, m) - ab.value + 1e-10);

    // Entropy concavity against a second random state.
    const BipartiteState other = sampling::state(rng, na, nb);
    const CMatrix mix = 0.5 * (st.matrix() + other.matrix());
    rep.record("entropy concavity",
               entropy_of(mix) - 0.5 * entropy(st.rho()) - 0.5 * entropy(other.rho()) + 1e-9);
}

inline AuditReport run_audit(const AuditSpec &spec, const OptimizerConfig &cfg) {
    spec.validate();
    AuditReport rep;
    sampling::Rng rng = detail::restart_rng(spec.seed, 0xA0D17ULL);
    for (int k = 0; k < spec.n_states; ++k) {
        const BipartiteState st = sampling::state(rng, spec.dim_a, spec.dim_b);
        audit_state(rep, st, rng, cfg);
    }
    return rep;
}

inline const char *kAuditCsvHeader = "invariant,checked,violations,worst_margin";

inline void write_audit_csv(std::ostream &out, const AuditReport &rep) {
    out << kAuditCsvHeader << '\n';
    for (const auto &s : rep.invariants()) {
        out << '"' << s.name << "\"," << s.checked << ',' << s.violations << ',' << io::format_number(s.worst_margin)
            << '\n';
    }
}

inline io::Json audit_to_json(const AuditReport &rep) {
    io::Json arr = io::Json::array();
    for (const auto &s : rep.invariants()) {
        io::Json j;
        j["invariant"] = s.name;
        j["checked"] = s.checked;
        j["violations"] = s.violations;
        j["worst_margin"] = s.worst_margin;
        arr.push_back(std::move(j));
    }
    io::Json out;
    out["invariants"] = std::move(arr);
    out["total_violations"] = rep.total_violations();
    return out;
}

}  // namespace qdiscord::audit
