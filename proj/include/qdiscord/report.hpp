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

// Per-state discord reports and family sweeps.

#pragma once

#include "qdiscord/entropic.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/qstate.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qdiscord {

enum class Family { Werner, Isotropic };

inline const char *to_string(Family f) { return f == Family::Werner ? "werner" : "isotropic"; }

inline Family parse_family(const std::string &name) {
    if (name == "werner") return Family::Werner;
    if (name == "isotropic") return Family::Isotropic;
    throw Error(ErrorKind::Domain, "unknown family \"" + name + "\" (expected werner or isotropic)");
}

struct FamilyMatch {
    Family family = Family::Werner;
    Eigen::Index m = 0;
    double x = 0.0;
};

/// Recognizes rho = a I + b F (Werner) or a I + b M (isotropic) on m x m
/// states, to 1e-10 entrywise, with the parameter inside the family's
/// domain. The maximally mixed state is reported as Werner.
inline std::optional<FamilyMatch> detect_family(const BipartiteState &state) {
    const Eigen::Index m = state.dim_a();
    if (m < 2 || state.dim_b() != m) return std::nullopt;
    const double md = static_cast<double>(m);
    const double n = md * md;
    const CMatrix &rho = state.matrix();
    const CMatrix id = CMatrix::Identity(m * m, m * m);
    // Projection onto span{I, G} with Gram matrix [[n, g], [g, h]].
    auto fit = [&](const CMatrix &g_op, double g, double h, double &a, double &b) {
        const double r0 = rho.trace().real();
        const double r1 = (rho * g_op).trace().real();
        const double det = n * h - g * g;
        a = (h * r0 - g * r1) / det;
        b = (n * r1 - g * r0) / det;
        return max_abs_entry(rho - a * id - b * g_op) <= 1e-10;
    };
    double a = 0.0;
    double b = 0.0;
    if (fit(swap_operator(m), md, n, a, b)) {
        const double x = md - a * (md * md * md - md);
        if (x >= -1.0 - 1e-10 && x <= 1.0 + 1e-10) return FamilyMatch{Family::Werner, m, std::clamp(x, -1.0, 1.0)};
    }
    if (fit(max_entangled_projector(m), 1.0, 1.0, a, b)) {
        const double x = 1.0 - a * (n - 1.0);
        if (x >= -1e-10 && x <= 1.0 + 1e-10) return FamilyMatch{Family::Isotropic, m, std::clamp(x, 0.0, 1.0)};
    }
    return std::nullopt;
}

inline double family_geo_closed(const FamilyMatch &f) {
    return f.family == Family::Werner ? werner_geo_closed(f.m, f.x) : isotropic_geo_closed(f.m, f.x);
}

/// Identical bases (Werner) or conjugate bases (isotropic) on both sides.
/// With the computational basis the two coincide.
inline std::vector<std::vector<double>> family_warm_starts(Eigen::Index m) { return {identity_params(m, m)}; }

struct ClosedForm {
    std::string source;  // "werner", "isotropic", or a two-qubit special case
    double value = 0.0;
};

struct EntropicPart {
    DiscordValue d_a;
    DiscordValue d_b;
    DiscordValue d_ab;
};

struct Report {
    Eigen::Index dim_a = 0;
    Eigen::Index dim_b = 0;
    double purity = 0.0;
    double mutual_information = 0.0;
    std::optional<EntropicPart> entropic;
    GeoResult geo_a;
    GeoResult geo_b;
    GeoResult geo_ab;
    std::optional<ClosedForm> closed_form;
    std::vector<std::string> flags;

    bool flagged() const { return !flags.empty(); }
};

inline constexpr double kHierarchySlack = 1e-6;
inline constexpr double kBoundSlack = 1e-8;

inline std::vector<std::string> cross_check(const GeoResult &a, const GeoResult &b, const GeoResult &ab) {
    std::vector<std::string> flags;
    const double one_sided = std::max(a.value, b.value);
    if (ab.value < one_sided - kHierarchySlack) {
        flags.push_back("two-sided geometric discord " + io::format_number(ab.value) +
                        " below one-sided value " + io::format_number(one_sided));
    }
    if (ab.value < ab.lower_bound - kBoundSlack) {
        flags.push_back("two-sided geometric discord " + io::format_number(ab.value) + " below lower bound " +
                        io::format_number(ab.lower_bound));
    }
    return flags;
}

inline Report compute_report(const BipartiteState &state, const OptimizerConfig &cfg, bool with_entropic) {
    Report r;
    r.dim_a = state.dim_a();
    r.dim_b = state.dim_b();
    r.purity = purity(state);
    r.mutual_information = mutual_information(state);

    std::vector<std::vector<double>> warm;
    const std::optional<FamilyMatch> family = detect_family(state);
    if (family) {
        warm = family_warm_starts(family->m);
        r.closed_form = ClosedForm{to_string(family->family), family_geo_closed(*family)};
    } else if (r.dim_a == 2 && r.dim_b == 2) {
        const TwoQubitBloch s = to_bloch(state);
        const TwoQubitPath path = two_qubit_path(s);
        if (path != TwoQubitPath::Alternating) r.closed_form = ClosedForm{to_string(path), two_qubit_geo(s, cfg).value};
    }

    const Eigen::Index na2 = r.dim_a * r.dim_a;
    std::vector<std::vector<double>> warm_a, warm_b;
    for (const auto &w : warm) {
        warm_a.emplace_back(w.begin(), w.begin() + na2);
        warm_b.emplace_back(w.begin() + na2, w.end());
    }
    r.geo_ab = geo_discord_two_sided(state, cfg, warm);
    r.geo_a = geo_discord_one_sided(state, Side::A, cfg, warm_a);
    r.geo_b = geo_discord_one_sided(state, Side::B, cfg, warm_b);
    if (with_entropic) {
        r.entropic = EntropicPart{discord_one_sided(state, Side::A, cfg), discord_one_sided(state, Side::B, cfg),
                                  discord_two_sided(state, cfg)};
    }
    r.flags = cross_check(r.geo_a, r.geo_b, r.geo_ab);
    return r;
}

namespace io {

inline Json optimizer_to_json(const OptimizationResult &o) {
    Json j;
    j["best_value"] = o.best_value;
    j["best_restart"] = o.best_restart;
    j["restarts_run"] = o.restarts_run;
    j["iterations_total"] = o.iterations_total;
    j["evaluations_total"] = o.evaluations_total;
    j["converged"] = o.converged;
    return j;
}

inline Json geo_to_json(const GeoResult &g) {
    Json j;
    j["value"] = g.value;
    j["lower_bound"] = g.lower_bound;
    if (g.measured_side) j["measured_side"] = std::string(1, side_name(*g.measured_side));
    j["measurement"] = measurement_to_json(g.optimal_measurement);
    j["optimizer"] = optimizer_to_json(g.optimizer_report);
    return j;
}

inline Json discord_to_json(const DiscordValue &d) {
    Json j;
    j["value"] = d.value;
    if (d.measured_side) j["measured_side"] = std::string(1, side_name(*d.measured_side));
    j["measurement"] = measurement_to_json(d.optimal_measurement);
    j["optimizer"] = optimizer_to_json(d.optimizer_report);
    return j;
}

inline Json report_to_json(const Report &r) {
    Json j;
    j["dim_a"] = r.dim_a;
    j["dim_b"] = r.dim_b;
    j["purity"] = r.purity;
    j["mutual_information"] = r.mutual_information;
    if (r.entropic) {
        j["entropic"]["D_A"] = discord_to_json(r.entropic->d_a);
        j["entropic"]["D_B"] = discord_to_json(r.entropic->d_b);
        j["entropic"]["D_AB"] = discord_to_json(r.entropic->d_ab);
    }
    j["geometric"]["D_A"] = geo_to_json(r.geo_a);
    j["geometric"]["D_B"] = geo_to_json(r.geo_b);
    j["geometric"]["D_AB"] = geo_to_json(r.geo_ab);
    if (r.closed_form) {
        j["closed_form"]["source"] = r.closed_form->source;
        j["closed_form"]["value"] = r.closed_form->value;
    }
    j["flags"] = r.flags;
    return j;
}

inline const char *kReportCsvHeader =
    "dim_a,dim_b,purity,mutual_information,D_A,D_B,D_AB,geo_A,geo_B,geo_AB,lower_bound_A,lower_bound_B,"
    "lower_bound_AB,closed_form_source,closed_form_value,flagged";

inline void write_report_csv(std::ostream &out, const Report &r) {
    auto opt = [](bool has, double v) { return has ? format_number(v) : std::string(); };
    const bool e = r.entropic.has_value();
    out << kReportCsvHeader << '\n';
    out << r.dim_a << ',' << r.dim_b << ',' << format_number(r.purity) << ',' << format_number(r.mutual_information)
        << ',' << opt(e, e ? r.entropic->d_a.value : 0) << ',' << opt(e, e ? r.entropic->d_b.value : 0) << ','
        << opt(e, e ? r.entropic->d_ab.value : 0) << ',' << format_number(r.geo_a.value) << ','
        << format_number(r.geo_b.value) << ',' << format_number(r.geo_ab.value) << ','
        << format_number(r.geo_a.lower_bound) << ',' << format_number(r.geo_b.lower_bound) << ','
        << format_number(r.geo_ab.lower_bound) << ',' << (r.closed_form ? r.closed_form->source : "") << ','
        << opt(r.closed_form.has_value(), r.closed_form ? r.closed_form->value : 0) << ','
        << (r.flagged() ? 1 : 0) << '\n';
}

}  // namespace io

struct SweepSpec {
    Family family = Family::Werner;
    Eigen::Index m = 2;
    double x_start = 0.0;
    double x_end = 1.0;
    int points = 21;

    void validate() const {
        if (m < 2) throw Error(ErrorKind::Domain, "m must be >= 2");
        if (points < 2) throw Error(ErrorKind::Domain, "points must be >= 2");
        const double lo = family == Family::Werner ? -1.0 : 0.0;
        for (double x : {x_start, x_end}) {
            if (!(x >= lo && x <= 1.0)) {
                throw Error(ErrorKind::Domain, std::string("x = ") + io::format_number(x) + " outside the " +
                                                   to_string(family) + " domain [" + io::format_number(lo) + ", 1]");
            }
        }
    }

    /// Evenly spaced points, endpoints exact.
    double x_at(int i) const {
        if (i == points - 1) return x_end;
        return x_start + (x_end - x_start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
};

struct SweepRow {
    Family family = Family::Werner;
    Eigen::Index m = 0;
    double x = 0.0;
    double geo_closed = 0.0;
    double geo_numeric = 0.0;
    double lower_bound = 0.0;
    double abs_gap = 0.0;
};

inline SweepRow sweep_point(Family family, Eigen::Index m, double x, const OptimizerConfig &cfg) {
    const BipartiteState state = family == Family::Werner ? werner(m, x) : isotropic(m, x);
    const GeoResult g = geo_discord_two_sided(state, cfg, family_warm_starts(m));
    const double closed = family == Family::Werner ? werner_geo_closed(m, x) : isotropic_geo_closed(m, x);
    return SweepRow{family, m, x, closed, g.value, g.lower_bound, std::abs(closed - g.value)};
}

inline std::vector<SweepRow> run_sweep(const SweepSpec &spec, const OptimizerConfig &cfg) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.points));
    for (int i = 0; i < spec.points; ++i) rows.push_back(sweep_point(spec.family, spec.m, spec.x_at(i), cfg));
    return rows;
}

namespace io {

inline const char *kSweepCsvHeader = "family,m,x,geo_closed,geo_numeric,lower_bound,abs_gap";

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto &r : rows) {
        out << to_string(r.family) << ',' << r.m << ',' << format_number(r.x) << ',' << format_number(r.geo_closed)
            << ',' << format_number(r.geo_numeric) << ',' << format_number(r.lower_bound) << ','
            << format_number(r.abs_gap) << '\n';
    }
}

inline Json sweep_to_json(const std::vector<SweepRow> &rows) {
    Json arr = Json::array();
    for (const auto &r : rows) {
        Json j;
        j["family"] = to_string(r.family);
        j["m"] = r.m;
        j["x"] = r.x;
        j["geo_closed"] = r.geo_closed;
        j["geo_numeric"] = r.geo_numeric;
        j["lower_bound"] = r.lower_bound;
        j["abs_gap"] = r.abs_gap;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace io

}  // namespace qdiscord
