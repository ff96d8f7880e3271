// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "probint/abstract_domain.hpp"
#include "probint/cfg.hpp"
#include "probint/fixpoint.hpp"
#include "probint/hardware_spec.hpp"
#include "probint/parser.hpp"

namespace probint::testing {

std::string corpus_path(const std::string& name);
std::string read_corpus(const std::string& name);

struct Analysis {
    Cfg cfg;
    SolveResult result;
};

// Parses, builds the CFG and solves; `widen` derives thresholds from the program.
Analysis analyze_source(const std::string& source, const HardwareSpec& spec, Domain domain, bool widen = false,
                        int max_iters = 20, Schedule schedule = Schedule::RoundRobin);

// Node id carrying the given source line; fails the process if absent or ambiguous.
NodeId node_at_line(const Cfg& cfg, int line);

bool rel_close(double actual, double expected, double tol);

HardwareSpec spec_1e4();
HardwareSpec spec_1e7();

// Random loop-free program over at most three variables a, b, c with at most
// `max_stmts` top-level statements and literals in [-4, 4].
std::string random_loop_free_program(std::mt19937_64& rng, int max_stmts = 6);

// Random expression source over the given variables, depth-bounded.
std::string random_expr(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth);
std::string random_guard(std::mt19937_64& rng, const std::vector<std::string>& vars);

AbstractElement random_abstract(std::mt19937_64& rng, const Bounds& b, bool allow_bottom = true);
ConcreteElement random_concrete(std::mt19937_64& rng, const Bounds& b, bool allow_bottom = true);

} // namespace probint::testing
