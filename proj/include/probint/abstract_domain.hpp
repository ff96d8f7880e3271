// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probint/ast.hpp"
#include "probint/cfg.hpp"
#include "probint/concrete_domain.hpp"
#include "probint/diagnostics.hpp"
#include "probint/hardware_spec.hpp"
#include "probint/interval.hpp"

namespace probint {

// A variable lies in `interval`, and each value of it is correct with
// probability mass pmf = prob / width.
struct AbstractElement {
    Interval interval;
    double prob = 1.0;

    static AbstractElement bottom() { return {Interval::empty(), 1.0}; }
    static AbstractElement top(const Bounds& bounds) { return {Interval::full(bounds), 0.0}; }

    [[nodiscard]] bool is_bottom() const { return interval.is_empty(); }

    friend bool operator==(const AbstractElement&, const AbstractElement&) = default;
};

// For bottom this is its probability, 1.
double pmf(const AbstractElement& e);

bool leq(const AbstractElement& a, const AbstractElement& b);
// leq in both directions.
bool equivalent(const AbstractElement& a, const AbstractElement& b);
AbstractElement join(const AbstractElement& a, const AbstractElement& b);
AbstractElement meet(const AbstractElement& a, const AbstractElement& b, Diagnostics* diags = nullptr);

AbstractElement alpha(const ConcreteElement& c);
ConcreteElement gamma(const AbstractElement& m);

std::string to_string(const AbstractElement& e);

class ThresholdSet {
  public:
    ThresholdSet(std::vector<std::int64_t> values, const Bounds& bounds);

    [[nodiscard]] const std::vector<std::int64_t>& values() const { return values_; }
    // Largest threshold <= v, and smallest threshold >= v; v must lie within bounds.
    [[nodiscard]] std::int64_t below(std::int64_t v) const;
    [[nodiscard]] std::int64_t above(std::int64_t v) const;

  private:
    std::vector<std::int64_t> values_;
};

// Program literals (with unary minus folded, and including the constants
// introduced by guard normalization) plus the machine bounds.
ThresholdSet thresholds_from_cfg(const Cfg& cfg, const Bounds& bounds);
ThresholdSet thresholds_from_program(const Stmt& program, const HardwareSpec& spec);

AbstractElement widen_threshold(const AbstractElement& old_e, const AbstractElement& new_e, const ThresholdSet& t);

using AbstractVars = std::map<std::string, AbstractElement, std::less<>>;

// One element per program variable; any bottom variable makes the whole state
// bottom.
class AbstractState {
  public:
    AbstractState() = default;
    explicit AbstractState(AbstractVars vars);

    static AbstractState bottom(const std::vector<std::string>& vars);
    static AbstractState entry(const std::vector<std::string>& vars, const Bounds& bounds);

    [[nodiscard]] bool is_bottom() const;
    [[nodiscard]] const AbstractVars& vars() const { return vars_; }
    [[nodiscard]] const AbstractElement& at(std::string_view name) const;
    void set(const std::string& name, AbstractElement e);
    [[nodiscard]] IntervalEnv intervals() const;

    friend bool operator==(const AbstractState&, const AbstractState&) = default;

  private:
    AbstractVars vars_;
    void normalize();
};

bool leq(const AbstractState& a, const AbstractState& b);
AbstractState join(const AbstractState& a, const AbstractState& b);
AbstractState widen_threshold(const AbstractState& old_s, const AbstractState& new_s, const ThresholdSet& t);
// Same interval for every variable; probabilities are ignored.
bool same_intervals(const AbstractState& a, const AbstractState& b);

AbstractState alpha(const ConcreteState& c);
ConcreteState gamma(const AbstractState& m);

AbstractState sp_assign(const AbstractState& state, const std::string& target, const Expr& rhs,
                        const HardwareSpec& spec, Diagnostics* diags = nullptr);
AbstractState sp_guard(const AbstractState& state, const Expr& guard, const HardwareSpec& spec,
                       Diagnostics* diags = nullptr);

// Result of narrowing a single variable's interval by a guard of the form
// `x op c` or `x %. k ==./!=. c` once constants are folded.
struct GuardRefinement {
    std::string var;
    Interval interval;
};
std::optional<GuardRefinement> refine_guard(const Expr& guard, const IntervalEnv& env, const Bounds& bounds);

} // namespace probint
