// SPDX-License-Identifier: Apache-2.0
#include "probint/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

namespace probint {

namespace {

using Runs = std::vector<std::pair<std::int64_t, std::int64_t>>;

Runs runs_of(const std::vector<std::int64_t>& values) {
    Runs out;
    for (const auto v : values) {
        if (!out.empty() && out.back().second + 1 == v) {
            out.back().second = v;
        } else {
            out.emplace_back(v, v);
        }
    }
    return out;
}

double rounded(double p) { return std::stod(format_probability(p)); }

std::string value_text(const ReportRow& row, Domain mode) {
    if (!row.reachable) {
        return "unreachable";
    }
    if (mode == Domain::Abstract) {
        return "[" + std::to_string(row.runs.front().first) + "," + std::to_string(row.runs.front().second) + "]";
    }
    std::string out = "{";
    for (std::size_t i = 0; i < row.runs.size(); ++i) {
        const auto [lo, hi] = row.runs[i];
        out += i == 0 ? "" : ",";
        out += std::to_string(lo);
        if (hi == lo + 1) {
            out += "," + std::to_string(hi);
        } else if (hi > lo) {
            out += ".." + std::to_string(hi);
        }
    }
    return out + "}";
}

std::string count(int n, const std::string& one, const std::string& many) {
    return std::to_string(n) + " " + (n == 1 ? one : many);
}

std::string status_line(const AnalysisReport& r) {
    const bool worklist = r.schedule == Schedule::Worklist;
    const auto changes = worklist ? count(r.iterations, "node update", "node updates")
                                  : count(r.iterations, "iteration", "iterations");
    if (r.converged) {
        const auto passes = worklist ? count(r.rounds, "evaluation", "evaluations") : count(r.rounds, "sweep", "sweeps");
        return "converged after " + changes + " (" + passes + ")";
    }
    return "did not converge within " + count(r.max_iters, "iteration", "iterations") + " (" + changes + ")";
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "program: " << r.program << '\n';
    os << "mode: " << to_string(r.mode);
    if (r.mode == Domain::Abstract) {
        os << (r.widening ? (r.widen_all ? ", widening at every node" : ", widening at loop heads") : ", no widening");
    }
    os << ", schedule " << to_string(r.schedule) << ", max " << r.max_iters << " iterations\n";
    os << "bounds: [" << r.spec.bounds.lo << "," << r.spec.bounds.hi << "]\n";
    os << "spec:";
    for (const OpKind op : kAllOpKinds) {
        os << ' ' << spec_key(op) << '=' << format_probability(r.spec.pr(op));
    }
    os << '\n' << status_line(r) << "\n\n";

    const std::array<std::string, 5> header = {"node", "line", "var", "value", "probability"};
    std::vector<std::array<std::string, 5>> cells;
    for (const auto& row : r.rows) {
        cells.push_back({"v" + std::to_string(row.node), std::to_string(row.line), row.var, value_text(row, r.mode),
                         row.reachable ? format_probability(row.prob) : "-"});
    }
    std::array<std::size_t, 5> width{};
    for (std::size_t c = 0; c < 5; ++c) {
        width[c] = header[c].size();
        for (const auto& line : cells) {
            width[c] = std::max(width[c], line[c].size());
        }
    }
    const auto emit = [&](const std::array<std::string, 5>& line) {
        for (std::size_t c = 0; c < 5; ++c) {
            const std::string pad(width[c] - line[c].size(), ' ');
            if (c > 0) {
                os << " | ";
            }
            // Numeric columns are right-aligned.
            if (c == 1) {
                os << pad << line[c];
            } else if (c == 4) {
                os << line[c];
            } else {
                os << line[c] << pad;
            }
        }
        os << '\n';
    };
    emit(header);
    for (std::size_t c = 0; c < 5; ++c) {
        os << (c > 0 ? "-+-" : "") << std::string(width[c], '-');
    }
    os << '\n';
    for (const auto& line : cells) {
        emit(line);
    }

    if (!r.warnings.empty()) {
        os << "\nwarnings:\n";
        for (const auto& w : r.warnings) {
            os << "  - " << w << '\n';
        }
    }
    if (!r.trace.empty()) {
        os << "\ntrace:\n";
        for (const auto& t : r.trace) {
            os << "  sweep " << t.round << " v" << t.node << ": " << t.state << '\n';
        }
    }
    return os.str();
}

std::string render_machine(const AnalysisReport& r) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["program"] = r.program;
    doc["mode"] = std::string(to_string(r.mode));
    doc["widening"] = r.widening;
    doc["widen_all"] = r.widen_all;
    doc["schedule"] = std::string(to_string(r.schedule));
    doc["max_iters"] = r.max_iters;

    ordered_json spec;
    spec["minint"] = r.spec.bounds.lo;
    spec["maxint"] = r.spec.bounds.hi;
    ordered_json probs = ordered_json::object();
    for (const OpKind op : kAllOpKinds) {
        probs[std::string(spec_key(op))] = rounded(r.spec.pr(op));
    }
    spec["probabilities"] = probs;
    doc["spec"] = spec;

    doc["converged"] = r.converged;
    doc["iterations"] = r.iterations;
    doc["rounds"] = r.rounds;

    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json j;
        j["node"] = row.node;
        j["line"] = row.line;
        j["var"] = row.var;
        j["reachable"] = row.reachable;
        if (row.reachable) {
            ordered_json runs = ordered_json::array();
            for (const auto& [lo, hi] : row.runs) {
                runs.push_back(ordered_json::array({lo, hi}));
            }
            j[r.mode == Domain::Abstract ? "interval" : "values"] =
                r.mode == Domain::Abstract ? runs.front() : runs;
            j["probability"] = rounded(row.prob);
        }
        rows.push_back(j);
    }
    doc["rows"] = rows;
    doc["warnings"] = r.warnings;
    ordered_json trace = ordered_json::array();
    for (const auto& t : r.trace) {
        trace.push_back(ordered_json{{"sweep", t.round}, {"node", t.node}, {"state", t.state}});
    }
    doc["trace"] = trace;
    return doc.dump(2) + "\n";
}

} // namespace

std::string format_probability(double p) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", p);
    return buf.data();
}

AnalysisReport make_report(std::string program, const Cfg& cfg, const HardwareSpec& spec,
                           const SolveOptions& options, const SolveResult& result) {
    AnalysisReport r;
    r.program = std::move(program);
    r.mode = result.domain;
    r.widening = result.widened;
    r.widen_all = options.widen_all;
    r.schedule = result.schedule;
    r.max_iters = options.max_iters;
    r.spec = spec;
    r.iterations = result.iterations;
    r.rounds = result.rounds;
    r.converged = result.converged;
    r.warnings = spec.warnings;
    r.warnings.insert(r.warnings.end(), result.warnings.begin(), result.warnings.end());
    r.trace = result.trace;

    for (const auto& node : cfg.nodes) {
        if (result.domain == Domain::Abstract) {
            for (const auto& [name, e] : result.abstract[node.id].vars()) {
                ReportRow row{node.id, node.line, name, !e.is_bottom(), {}, e.prob};
                if (row.reachable) {
                    row.runs.emplace_back(e.interval.lo(), e.interval.hi());
                }
                r.rows.push_back(std::move(row));
            }
        } else {
            for (const auto& [name, e] : result.concrete[node.id].vars()) {
                r.rows.push_back(ReportRow{node.id, node.line, name, !e.is_bottom(), runs_of(e.values), e.prob});
            }
        }
    }
    return r;
}

std::string render_report(const AnalysisReport& report, Format format) {
    return format == Format::Text ? render_text(report) : render_machine(report);
}

} // namespace probint
