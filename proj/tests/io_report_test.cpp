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

#include "oracles.hpp"
#include "qdiscord/audit.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/report.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace qdiscord {
namespace {

using testing::MatrixNear;

ErrorKind parse_kind(const std::string &text) {
    try {
        io::parse_state(text);
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return ErrorKind::Domain;
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

TEST(FormatNumber, Examples) {
    EXPECT_EQ(io::format_number(0.0), "0");
    EXPECT_EQ(io::format_number(-0.0), "0");
    EXPECT_EQ(io::format_number(0.5), "0.5");
    EXPECT_EQ(io::format_number(1.0), "1");
    EXPECT_EQ(io::format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(io::format_number(1e-20), "1e-20");
    EXPECT_EQ(io::format_number(-2.5e7), "-25000000");
}

TEST(ParseState, Bell) {
    const BipartiteState s = io::parse_state(R"({"dim_a": 2, "dim_b": 2, "matrix": [
        [[0.5,0],[0,0],[0,0],[0.5,0]], [[0,0],[0,0],[0,0],[0,0]],
        [[0,0],[0,0],[0,0],[0,0]], [[0.5,0],[0,0],[0,0],[0.5,0]]]})");
    EXPECT_TRUE(MatrixNear(s.matrix(), testing::bell_matrix(), 1e-15));
}

TEST(ParseState, Errors) {
    EXPECT_EQ(parse_kind("{"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind("[1, 2]"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 1, "matrix": [[[1,0]]]})"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 0, "dim_b": 1, "matrix": []})"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 1.5, "dim_b": 1, "matrix": [[[1,0]]]})"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1,0],[0,0]]]})"), ErrorKind::DimensionMismatch);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1,0],[0,0]], [[0,0]]]})"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1,0],[0,0]], [[0,0],"x"]]})"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1,0],[0,0]], [[0,0],[0]]]})"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1,0],[0.1,0]], [[0,0],[0,0]]]})"),
              ErrorKind::NonHermitian);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1,0],[0,0]], [[0,0],[1,0]]]})"),
              ErrorKind::NonUnitTrace);
    EXPECT_EQ(parse_kind(R"({"dim_a": 2, "dim_b": 1, "matrix": [[[1.5,0],[0,0]], [[0,0],[-0.5,0]]]})"),
              ErrorKind::NotPositiveSemidefinite);
}

TEST(ParseState, MalformedMessage) {
    try {
        io::parse_state("{\"dim_a\": ");
        FAIL();
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("malformed JSON"), std::string::npos);
    }
}

TEST(StateJson, RoundTrip) {
    sampling::Rng rng(1);
    for (int k = 0; k < 10; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 3);
        const BipartiteState back = io::parse_state(io::state_to_json(s).dump());
        EXPECT_EQ(back.dim_a(), 2);
        EXPECT_EQ(back.dim_b(), 3);
        EXPECT_TRUE(MatrixNear(back.matrix(), s.matrix(), 0.0));
    }
}

TEST(LoadState, MissingFile) {
    EXPECT_THROW(io::load_state("/nonexistent/qdiscord/state.json"), io::FileError);
}

TEST(DetectFamily, RecognizesFamilies) {
    for (Eigen::Index m : {2, 3, 4}) {
        for (double x : {-1.0, -0.3, 0.4, 1.0}) {
            const auto f = detect_family(werner(m, x));
            ASSERT_TRUE(f.has_value());
            EXPECT_EQ(f->family, Family::Werner);
            EXPECT_EQ(f->m, m);
            EXPECT_NEAR(f->x, x, 1e-10);
        }
        for (double x : {0.0, 0.6, 1.0}) {
            const double md = static_cast<double>(m);
            if (std::abs(x - 1.0 / (md * md)) < 1e-12) continue;
            const auto f = detect_family(isotropic(m, x));
            ASSERT_TRUE(f.has_value());
            EXPECT_EQ(f->family, Family::Isotropic);
            EXPECT_NEAR(f->x, x, 1e-10);
        }
        const auto mixed = detect_family(testing::maximally_mixed(m, m));
        ASSERT_TRUE(mixed.has_value());
        EXPECT_EQ(mixed->family, Family::Werner);
        EXPECT_NEAR(mixed->x, 1.0 / static_cast<double>(m), 1e-12);
    }
}

TEST(DetectFamily, RejectsOthers) {
    sampling::Rng rng(2);
    EXPECT_FALSE(detect_family(sampling::state(rng, 2, 2)).has_value());
    EXPECT_FALSE(detect_family(testing::maximally_mixed(2, 3)).has_value());
    EXPECT_FALSE(detect_family(sampling::product_state(rng, 3, 3)).has_value());
}

TEST(ParseFamily, Names) {
    EXPECT_EQ(parse_family("werner"), Family::Werner);
    EXPECT_EQ(parse_family("isotropic"), Family::Isotropic);
    EXPECT_THROW(parse_family("bell"), Error);
    EXPECT_STREQ(to_string(Family::Isotropic), "isotropic");
}

TEST(CrossCheck, FlagsViolations) {
    GeoResult a, b, ab;
    a.value = 0.2;
    b.value = 0.1;
    ab.value = 0.3;
    ab.lower_bound = 0.25;
    EXPECT_TRUE(cross_check(a, b, ab).empty());
    ab.value = 0.2 - 1e-3;
    EXPECT_EQ(cross_check(a, b, ab).size(), 2u);
    ab.value = 0.26;
    ab.lower_bound = 0.3;
    EXPECT_EQ(cross_check(a, b, ab).size(), 1u);
}

TEST(ComputeReport, BellUsesClosedForm) {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    const Report r = compute_report(testing::bell(), cfg, true);
    EXPECT_EQ(r.dim_a, 2);
    EXPECT_NEAR(r.purity, 1.0, 1e-14);
    EXPECT_NEAR(r.mutual_information, 2.0, 1e-12);
    ASSERT_TRUE(r.closed_form.has_value());
    EXPECT_EQ(r.closed_form->source, "isotropic");
    EXPECT_NEAR(r.closed_form->value, 0.5, 1e-15);
    EXPECT_NEAR(r.geo_ab.value, 0.5, 1e-8);
    EXPECT_NEAR(r.geo_a.value, 0.5, 1e-8);
    ASSERT_TRUE(r.entropic.has_value());
    EXPECT_NEAR(r.entropic->d_ab.value, 1.0, 1e-4);
    EXPECT_FALSE(r.flagged());
}

TEST(ComputeReport, CsvAndJson) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    const Report r = compute_report(testing::maximally_mixed(2, 3), cfg, false);
    std::ostringstream csv;
    io::write_report_csv(csv, r);
    const auto l = lines(csv.str());
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], io::kReportCsvHeader);
    EXPECT_EQ(l[1].rfind("2,3,", 0), 0u);
    EXPECT_EQ(std::count(l[1].begin(), l[1].end(), ','), std::count(l[0].begin(), l[0].end(), ','));
    EXPECT_EQ(l[1].back(), '0');

    const io::Json j = io::report_to_json(r);
    EXPECT_EQ(j["dim_a"], 2);
    EXPECT_EQ(j["dim_b"], 3);
    EXPECT_TRUE(j.contains("geometric"));
    EXPECT_FALSE(j.contains("entropic"));
    EXPECT_TRUE(io::Json::parse(j.dump()) == j);
}

TEST(Sweep, SpecPointsAndValidation) {
    SweepSpec spec;
    spec.family = Family::Werner;
    spec.m = 2;
    spec.x_start = -1.0;
    spec.x_end = 1.0;
    spec.points = 3;
    EXPECT_NO_THROW(spec.validate());
    EXPECT_EQ(spec.x_at(0), -1.0);
    EXPECT_EQ(spec.x_at(1), 0.0);
    EXPECT_EQ(spec.x_at(2), 1.0);
    spec.family = Family::Isotropic;
    EXPECT_THROW(spec.validate(), Error);
    spec.x_start = 0.0;
    spec.points = 1;
    EXPECT_THROW(spec.validate(), Error);
}

TEST(Sweep, RowsMatchClosedForm) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    SweepSpec spec;
    spec.family = Family::Isotropic;
    spec.m = 2;
    spec.x_start = 0.0;
    spec.x_end = 1.0;
    spec.points = 5;
    const std::vector<SweepRow> rows = run_sweep(spec, cfg);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto &r : rows) {
        EXPECT_NEAR(r.geo_closed, isotropic_geo_closed(2, r.x), 0.0);
        EXPECT_LE(r.abs_gap, 1e-6);
        EXPECT_GE(r.geo_numeric, r.lower_bound - 1e-9);
    }
    std::ostringstream csv;
    io::write_sweep_csv(csv, rows);
    const auto l = lines(csv.str());
    ASSERT_EQ(l.size(), 6u);
    EXPECT_EQ(l[0], "family,m,x,geo_closed,geo_numeric,lower_bound,abs_gap");
    EXPECT_EQ(l[1].rfind("isotropic,2,0,", 0), 0u);
    EXPECT_EQ(io::sweep_to_json(rows).size(), 5u);
}

TEST(Audit, SmallRunIsClean) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    audit::AuditSpec spec;
    spec.n_states = 5;
    spec.dim_a = 2;
    spec.dim_b = 3;
    const audit::AuditReport rep = audit::run_audit(spec, cfg);
    EXPECT_EQ(rep.total_violations(), 0);
    ASSERT_FALSE(rep.invariants().empty());
    for (const auto &s : rep.invariants()) EXPECT_EQ(s.checked % 5, 0) << s.name;
    std::ostringstream csv;
    audit::write_audit_csv(csv, rep);
    EXPECT_EQ(lines(csv.str()).size(), rep.invariants().size() + 1);
}

TEST(Audit, RecordsViolations) {
    audit::AuditReport rep;
    rep.record("a", 0.1);
    rep.record("a", -0.2);
    rep.record("b", std::nan(""));
    EXPECT_EQ(rep.total_violations(), 2);
    EXPECT_EQ(rep.invariants()[0].name, "a");
    EXPECT_EQ(rep.invariants()[0].checked, 2);
    EXPECT_EQ(rep.invariants()[0].worst_margin, -0.2);
    audit::AuditSpec bad;
    bad.n_states = -1;
    EXPECT_THROW(bad.validate(), Error);
}

}  // namespace
}  // namespace qdiscord
