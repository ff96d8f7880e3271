// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probint/cfg.hpp"
#include "probint/fixpoint.hpp"
#include "probint/hardware_spec.hpp"

namespace probint {

struct ReportRow {
    NodeId node;
    int line;
    std::string var;
    bool reachable = true;
    // Closed runs of values: a single run for intervals, maximal runs for sets.
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    double prob = 1.0;
};

struct AnalysisReport {
    std::string program;
    Domain mode = Domain::Abstract;
    bool widening = false;
    bool widen_all = false;
    Schedule schedule = Schedule::RoundRobin;
    int max_iters = 20;
    HardwareSpec spec;
    std::vector<ReportRow> rows; // node order, then variable order
    int iterations = 0;
    int rounds = 0;
    bool converged = false;
    std::vector<std::string> warnings;
    std::vector<TraceEntry> trace;
};

AnalysisReport make_report(std::string program, const Cfg& cfg, const HardwareSpec& spec,
                           const SolveOptions& options, const SolveResult& result);

enum class Format { Text, Machine };

// Probabilities are written with 12 significant digits in both formats.
std::string render_report(const AnalysisReport& report, Format format);

std::string format_probability(double p);

} // namespace probint
