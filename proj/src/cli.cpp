// SPDX-License-Identifier: Apache-2.0
#include "probint/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "probint/abstract_domain.hpp"
#include "probint/cfg.hpp"
#include "probint/fixpoint.hpp"
#include "probint/parser.hpp"
#include "probint/report.hpp"

namespace probint {

namespace {

struct Args {
    std::string program;
    std::string spec;
    Domain mode = Domain::Abstract;
    bool widening = false;
    bool widen_all = false;
    int max_iters = 20;
    std::optional<std::int64_t> minint;
    std::optional<std::int64_t> maxint;
    Format format = Format::Text;
    Schedule schedule = Schedule::RoundRobin;
    bool trace = false;
    std::string out;
    std::uint64_t oracle_cap = OracleLimits{}.max_tuples;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::map<std::string, Domain> kModes{{"concrete", Domain::Concrete}, {"abstract", Domain::Abstract}};
const std::map<std::string, Schedule> kSchedules{
    {"round-robin", Schedule::RoundRobin}, {"jacobi", Schedule::Jacobi}, {"worklist", Schedule::Worklist}};

int analyze(const Args& a, std::ostream& out, std::ostream& err) {
    const auto source = read_file(a.program);
    if (!source) {
        err << "error: cannot open program file '" << a.program << "'\n";
        return kExitInputError;
    }
    if (a.spec.empty()) {
        err << "error: --spec is required\n";
        return kExitUsage;
    }
    if (a.mode == Domain::Concrete && (a.widening || a.widen_all)) {
        err << "error: widening applies to the abstract mode only\n";
        return kExitUsage;
    }

    HardwareSpec spec;
    try {
        spec = load_spec(a.spec);
        if (a.minint) {
            spec.bounds.lo = *a.minint;
        }
        if (a.maxint) {
            spec.bounds.hi = *a.maxint;
        }
        validate(spec);
    } catch (const SpecError& e) {
        err << "error: " << a.spec << ": " << e.what() << '\n';
        return kExitInputError;
    }

    Cfg cfg;
    try {
        const auto program = parse_program(*source);
        check_literals(*program, spec.bounds);
        cfg = build_cfg(*program);
    } catch (const LexError& e) {
        err << a.program << ':' << e.what() << '\n';
        return kExitInputError;
    } catch (const ParseError& e) {
        err << a.program << ':' << e.what() << '\n';
        return kExitInputError;
    } catch (const FrontendError& e) {
        err << a.program << ": " << e.what() << '\n';
        return kExitInputError;
    }

    SolveOptions options;
    options.domain = a.mode;
    options.max_iters = a.max_iters;
    options.schedule = a.schedule;
    options.trace = a.trace;
    options.widen_all = a.widen_all;
    options.limits.max_tuples = a.oracle_cap;
    if (a.widening || a.widen_all) {
        options.widening = thresholds_from_cfg(cfg, spec.bounds);
    }

    SolveResult result;
    try {
        result = solve(build_equations(cfg), spec, options);
    } catch (const OracleBlowup& e) {
        err << "error: " << e.what() << '\n';
        return kExitAnalysisError;
    }

    const auto name = std::filesystem::path(a.program).filename().string();
    const auto text = render_report(make_report(name, cfg, spec, options, result), a.format);
    if (a.out.empty()) {
        out << text;
    } else {
        std::ofstream file(a.out, std::ios::binary);
        if (!file || !(file << text)) {
            err << "error: cannot write '" << a.out << "'\n";
            return kExitInputError;
        }
    }
    if (!result.converged) {
        err << "warning: no fixpoint within " << a.max_iters << " iterations\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reliability analysis of programs on unreliable hardware", "probint"};
    app.require_subcommand(1);
    Args a;
    std::string mode = "abstract";
    std::string schedule = "round-robin";

    auto* cmd = app.add_subcommand("analyze", "Analyze a program and report per-point results");
    cmd->add_option("program", a.program, "Program source file")->required();
    cmd->add_option("--spec", a.spec, "Hardware specification file (required)");
    cmd->add_option("--mode", mode, "Analysis domain")->check(CLI::IsMember(kModes));
    cmd->add_flag("--widening", a.widening, "Apply threshold widening at loop heads");
    cmd->add_flag("--widen-all", a.widen_all, "Apply threshold widening at every node");
    cmd->add_option("--max-iters", a.max_iters, "Iteration limit")->check(CLI::PositiveNumber);
    cmd->add_option("--minint", a.minint, "Override the spec's minint");
    cmd->add_option("--maxint", a.maxint, "Override the spec's maxint");
    cmd->add_option("--format", a.format, "Report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"text", Format::Text}, {"machine", Format::Machine}}));
    cmd->add_option("--schedule", schedule, "Iteration order")->check(CLI::IsMember(kSchedules));
    cmd->add_flag("--trace", a.trace, "Include every state change in the report");
    cmd->add_option("--out", a.out, "Write the report to a file instead of standard output");
    cmd->add_option("--oracle-cap", a.oracle_cap, "Tuple limit for the concrete domain")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    }
    a.mode = kModes.at(mode);
    a.schedule = kSchedules.at(schedule);
    return analyze(a, out, err);
}

} // namespace probint
