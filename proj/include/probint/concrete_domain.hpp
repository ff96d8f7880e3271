// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "probint/ast.hpp"
#include "probint/diagnostics.hpp"
#include "probint/hardware_spec.hpp"

namespace probint {

// Slack for probability comparisons in both orders.
inline constexpr double kPmfTolerance = 1e-12;

// A variable takes its value from `values` with probability `prob`.
struct ConcreteElement {
    std::vector<std::int64_t> values; // sorted, unique
    double prob = 1.0;

    static ConcreteElement bottom() { return {{}, 1.0}; }
    static ConcreteElement top(const Bounds& bounds);
    // Sorts and de-duplicates.
    static ConcreteElement of(std::vector<std::int64_t> values, double prob);

    [[nodiscard]] bool is_bottom() const { return values.empty(); }

    friend bool operator==(const ConcreteElement&, const ConcreteElement&) = default;
};

bool leq(const ConcreteElement& a, const ConcreteElement& b);
ConcreteElement join(const ConcreteElement& a, const ConcreteElement& b);
ConcreteElement meet(const ConcreteElement& a, const ConcreteElement& b);

std::string to_string(const ConcreteElement& e);

using ConcreteVars = std::map<std::string, ConcreteElement, std::less<>>;

// One element per program variable. A state with any empty value set is
// unreachable and is kept normalized to all-bottom.
class ConcreteState {
  public:
    ConcreteState() = default;
    explicit ConcreteState(ConcreteVars vars);

    static ConcreteState bottom(const std::vector<std::string>& vars);
    // Every variable ranges over the machine integers with probability 1.
    static ConcreteState entry(const std::vector<std::string>& vars, const Bounds& bounds);

    [[nodiscard]] bool is_bottom() const;
    [[nodiscard]] const ConcreteVars& vars() const { return vars_; }
    [[nodiscard]] const ConcreteElement& at(std::string_view name) const;
    void set(const std::string& name, ConcreteElement e);

    friend bool operator==(const ConcreteState&, const ConcreteState&) = default;

  private:
    ConcreteVars vars_;
    void normalize();
};

bool leq(const ConcreteState& a, const ConcreteState& b);
ConcreteState join(const ConcreteState& a, const ConcreteState& b);
// Same value sets for every variable; probabilities are ignored.
bool same_values(const ConcreteState& a, const ConcreteState& b);

struct OracleLimits {
    std::uint64_t max_tuples = 1'000'000;
};

ConcreteState sp_assign(const ConcreteState& state, const std::string& target, const Expr& rhs,
                        const HardwareSpec& spec, Diagnostics* diags = nullptr, const OracleLimits& limits = {});
ConcreteState sp_guard(const ConcreteState& state, const Expr& guard, const HardwareSpec& spec,
                       Diagnostics* diags = nullptr, const OracleLimits& limits = {});

// Probability that all reads and operators of `e` behave: Rel(Rd) per distinct
// variable times Rel(op) per operator occurrence.
double expression_factor(const Expr& e, const HardwareSpec& spec);

} // namespace probint
