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

// qdiscord command-line tool.
//
//   qdiscord compute STATE.json [--entropic] [--format csv|json] [--out PATH]
//   qdiscord sweep --family werner|isotropic --m M [--x-start X] [--x-end X] [--points N]
//   qdiscord verify [--quick]
//   qdiscord audit [--states N] [--dims NA,NB]
//
// Shared flags: --restarts, --seed, --tol, --max-iterations.
//
// Exit codes: 0 success; 1 verify check failed; 2 invalid input, parse or
// file error; 3 flagged report record or audit violation. Every error path
// prints one line starting with "error:" to stderr.

#include "qdiscord/audit.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/report.hpp"
#include "qdiscord/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace qdiscord;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitFlagged = 3;

std::string one_line(std::string s) {
    for (char &c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

int fail(const std::string &what) {
    std::cerr << "error: " << one_line(what) << '\n';
    return kExitInvalid;
}

struct Common {
    OptimizerConfig cfg;
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App *app, Common &c) {
    app->add_option("--restarts", c.cfg.restarts, "Random restarts per optimization")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--max-iterations", c.cfg.max_iterations, "Pattern-search iterations per restart")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", c.cfg.seed, "Seed for restarts and sampling")->capture_default_str();
    app->add_option("--tol", c.cfg.value_tolerance, "Convergence tolerance on the objective value")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--out", c.out_path, "Write output to this file instead of stdout");
    app->add_option("--format", c.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
}

// Output is assembled in memory and written only once complete.
int emit(const Common &c, const std::string &text) {
    if (c.out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return kExitOk;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) return fail("cannot write output file: " + c.out_path);
    f << text;
    f.close();
    if (!f) return fail("failed writing output file: " + c.out_path);
    return kExitOk;
}

int cmd_compute(const Common &c, const std::string &path, bool entropic) {
    const BipartiteState state = io::load_state(path);
    const Report r = compute_report(state, c.cfg, entropic);
    std::ostringstream out;
    if (c.format == "json") {
        out << io::report_to_json(r).dump(2) << '\n';
    } else {
        io::write_report_csv(out, r);
    }
    if (const int rc = emit(c, out.str()); rc != kExitOk) return rc;
    if (r.flagged()) {
        for (const auto &f : r.flags) std::cerr << "error: flagged: " << one_line(f) << '\n';
        return kExitFlagged;
    }
    return kExitOk;
}

int cmd_sweep(const Common &c, const SweepSpec &spec) {
    const std::vector<SweepRow> rows = run_sweep(spec, c.cfg);
    std::ostringstream out;
    if (c.format == "json") {
        out << io::sweep_to_json(rows).dump(2) << '\n';
    } else {
        io::write_sweep_csv(out, rows);
    }
    return emit(c, out.str());
}

int cmd_verify(const Common &c, bool quick) {
    verify::Options o;
    o.cfg = c.cfg;
    o.quick = quick;
    std::ostringstream out;
    const std::vector<verify::Check> checks = verify::run_all(o, c.out_path.empty() ? &std::cout : &out);
    const bool ok = verify::all_pass(checks);
    const std::string summary = std::string(ok ? "ALL PASS" : "SOME CHECKS FAILED") + " (" +
                                std::to_string(checks.size()) + " checks)\n";
    if (c.out_path.empty()) {
        std::cout << summary;
    } else {
        out << summary;
        if (const int rc = emit(c, out.str()); rc != kExitOk) return rc;
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_audit(const Common &c, const audit::AuditSpec &spec) {
    const audit::AuditReport rep = audit::run_audit(spec, c.cfg);
    std::ostringstream out;
    if (c.format == "json") {
        out << audit::audit_to_json(rep).dump(2) << '\n';
    } else {
        audit::write_audit_csv(out, rep);
    }
    if (const int rc = emit(c, out.str()); rc != kExitOk) return rc;
    if (rep.total_violations() > 0) {
        std::cerr << "error: audit found " << rep.total_violations() << " invariant violations\n";
        return kExitFlagged;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entropic and geometric quantum discord of bipartite states"};
    app.require_subcommand(1);

    Common common;

    std::string state_path;
    bool entropic = false;
    CLI::App *compute = app.add_subcommand("compute", "Discord report for a JSON state file");
    compute->add_option("state", state_path, "Density-matrix JSON file")->required();
    compute->add_flag("--entropic", entropic, "Also compute the entropic discords");
    add_common(compute, common);

    std::string family = "werner";
    SweepSpec sweep_spec;
    bool x_start_set = false;
    CLI::App *sweep = app.add_subcommand("sweep", "Closed form against the optimizer along a state family");
    sweep->add_option("--family", family, "werner or isotropic")
        ->capture_default_str()
        ->check(CLI::IsMember({"werner", "isotropic"}));
    sweep->add_option("--m", sweep_spec.m, "Local dimension")->required();
    sweep->add_option("--x-start", sweep_spec.x_start, "First x (default: family lower limit)")
        ->each([&](const std::string &) { x_start_set = true; });
    sweep->add_option("--x-end", sweep_spec.x_end, "Last x")->capture_default_str();
    sweep->add_option("--points", sweep_spec.points, "Number of x values")->capture_default_str();
    add_common(sweep, common);

    bool quick = false;
    CLI::App *verify_cmd = app.add_subcommand("verify", "Run the reference-value verification table");
    verify_cmd->add_flag("--quick", quick, "Skip the m=4 family sweeps");
    add_common(verify_cmd, common);

    audit::AuditSpec audit_spec;
    std::vector<Eigen::Index> dims{2, 2};
    CLI::App *audit_cmd = app.add_subcommand("audit", "Randomized invariant checks");
    audit_cmd->add_option("--states", audit_spec.n_states, "Number of random states")->capture_default_str();
    audit_cmd->add_option("--dims", dims, "Subsystem dimensions NA,NB")->expected(2)->delimiter(',');
    add_common(audit_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail(e.what());
    }

    try {
        common.cfg.validate();
        if (*compute) return cmd_compute(common, state_path, entropic);
        if (*sweep) {
            sweep_spec.family = parse_family(family);
            if (!x_start_set) sweep_spec.x_start = sweep_spec.family == Family::Werner ? -1.0 : 0.0;
            return cmd_sweep(common, sweep_spec);
        }
        if (*verify_cmd) return cmd_verify(common, quick);
        if (*audit_cmd) {
            audit_spec.seed = common.cfg.seed;
            audit_spec.dim_a = dims[0];
            audit_spec.dim_b = dims[1];
            return cmd_audit(common, audit_spec);
        }
    } catch (const io::FileError &e) {
        return fail(std::string("file: ") + e.what());
    } catch (const Error &e) {
        return fail(e.what());
    } catch (const std::exception &e) {
        return fail(e.what());
    }
    return fail("no subcommand");
}
