// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "probint/abstract_domain.hpp"
#include "probint/cfg.hpp"
#include "probint/concrete_domain.hpp"
#include "probint/hardware_spec.hpp"

namespace probint {

// g_i = (seed, for the entry) joined with sp(g_j, label) over incoming edges j -> i.
struct Equation {
    NodeId node;
    bool seeded = false;
    std::vector<std::size_t> incoming; // edge indices into the CFG
};

struct EquationSystem {
    std::shared_ptr<const Cfg> cfg;
    std::vector<std::string> vars;
    std::vector<Equation> equations; // indexed by node id
};

EquationSystem build_equations(const Cfg& cfg, std::vector<std::string> vars);
EquationSystem build_equations(const Cfg& cfg);

enum class Domain { Concrete, Abstract };

// RoundRobin sweeps nodes in reverse postorder and reads fresh values
// (Gauss-Seidel). Jacobi reads the previous sweep's vector. Worklist
// re-evaluates successors of changed nodes only.
enum class Schedule { RoundRobin, Jacobi, Worklist };

std::string_view to_string(Domain d);
std::string_view to_string(Schedule s);

struct SolveOptions {
    Domain domain = Domain::Abstract;
    std::optional<ThresholdSet> widening;
    bool widen_all = false;
    int max_iters = 20;
    Schedule schedule = Schedule::RoundRobin;
    bool trace = false;
    OracleLimits limits;
};

struct TraceEntry {
    int round;
    NodeId node;
    std::string state;
};

struct SolveResult {
    Domain domain = Domain::Abstract;
    Schedule schedule = Schedule::RoundRobin;
    bool widened = false;
    // Exactly one of these is filled, indexed by node id.
    std::vector<ConcreteState> concrete;
    std::vector<AbstractState> abstract;
    // Sweeps (worklist: node updates) that changed some state.
    int iterations = 0;
    // Sweeps (worklist: node evaluations) performed, including the final
    // confirming one.
    int rounds = 0;
    bool converged = false;
    std::vector<TraceEntry> trace;
    std::vector<std::string> warnings;
};

// A node's state is replaced only when some variable's value set (concrete)
// or interval (abstract) changes, so probabilities are those computed when
// the shape last moved. Widening, when enabled, is applied at loop heads, or
// at every node with `widen_all`.
SolveResult solve(const EquationSystem& system, const HardwareSpec& spec, const SolveOptions& options);

// Throws FrontendError when a program literal lies outside the machine bounds.
void check_literals(const Stmt& program, const Bounds& bounds);

struct SoundnessViolation {
    NodeId node;
    std::string var;
    AbstractElement alpha;
    AbstractElement abstract;
};

struct SoundnessReport {
    std::vector<SoundnessViolation> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

// alpha(concrete) below abstract at every node and variable.
SoundnessReport check_soundness(const SolveResult& concrete, const SolveResult& abstract);

} // namespace probint
