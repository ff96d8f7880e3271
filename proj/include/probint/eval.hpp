// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probint/ast.hpp"
#include "probint/diagnostics.hpp"
#include "probint/hardware_spec.hpp"

namespace probint {

// Variable bindings for deterministic evaluation; programs have few variables.
using Env = std::vector<std::pair<std::string, std::int64_t>>;

// Fault-free machine semantics: C truncating division, results clamped into
// the machine bounds, comparisons and connectives yield 0 or 1. Division or
// modulo by zero has no value.
std::optional<std::int64_t> apply_binary(BinaryOp op, std::int64_t a, std::int64_t b, const Bounds& bounds,
                                         Diagnostics* diags = nullptr);
std::int64_t apply_unary(UnaryOp op, std::int64_t a, const Bounds& bounds, Diagnostics* diags = nullptr);

// Throws std::out_of_range for an unbound variable.
std::optional<std::int64_t> evaluate(const Expr& e, const Env& env, const Bounds& bounds,
                                     Diagnostics* diags = nullptr);

// Value of a variable-free expression, if defined.
std::optional<std::int64_t> fold_constant(const Expr& e, const Bounds& bounds, Diagnostics* diags = nullptr);

} // namespace probint
