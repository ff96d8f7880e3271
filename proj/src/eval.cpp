// SPDX-License-Identifier: Apache-2.0
#include "probint/eval.hpp"

#include <stdexcept>

namespace probint {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

__extension__ using Wide = __int128;

std::int64_t clamp_wide(Wide v, const Bounds& bounds, BinaryOp op, Diagnostics* diags) {
    if (v < bounds.lo || v > bounds.hi) {
        warn(diags, "overflow in '" + std::string(spelling(op)) + "' clamped to [" + std::to_string(bounds.lo) +
                        "," + std::to_string(bounds.hi) + "]");
        return v < bounds.lo ? bounds.lo : bounds.hi;
    }
    return static_cast<std::int64_t>(v);
}

} // namespace

std::optional<std::int64_t> apply_binary(BinaryOp op, std::int64_t a, std::int64_t b, const Bounds& bounds,
                                         Diagnostics* diags) {
    const Wide x = a;
    const Wide y = b;
    switch (op) {
    case BinaryOp::Add: return clamp_wide(x + y, bounds, op, diags);
    case BinaryOp::Sub: return clamp_wide(x - y, bounds, op, diags);
    case BinaryOp::Mul: return clamp_wide(x * y, bounds, op, diags);
    case BinaryOp::Div:
    case BinaryOp::Mod:
        if (b == 0) {
            warn(diags, std::string(op == BinaryOp::Div ? "division" : "modulo") +
                            " by zero: offending values excluded");
            return std::nullopt;
        }
        return clamp_wide(op == BinaryOp::Div ? x / y : x % y, bounds, op, diags);
    case BinaryOp::Lt: return a < b ? 1 : 0;
    case BinaryOp::Le: return a <= b ? 1 : 0;
    case BinaryOp::Gt: return a > b ? 1 : 0;
    case BinaryOp::Ge: return a >= b ? 1 : 0;
    case BinaryOp::Eq: return a == b ? 1 : 0;
    case BinaryOp::Ne: return a != b ? 1 : 0;
    case BinaryOp::And: return (a != 0 && b != 0) ? 1 : 0;
    case BinaryOp::Or: return (a != 0 || b != 0) ? 1 : 0;
    }
    return std::nullopt;
}

std::int64_t apply_unary(UnaryOp op, std::int64_t a, const Bounds& bounds, Diagnostics* diags) {
    switch (op) {
    case UnaryOp::Neg: return clamp_wide(-static_cast<Wide>(a), bounds, BinaryOp::Sub, diags);
    case UnaryOp::Plus: return a;
    case UnaryOp::Not: return a == 0 ? 1 : 0;
    }
    return a;
}

std::optional<std::int64_t> evaluate(const Expr& e, const Env& env, const Bounds& bounds, Diagnostics* diags) {
    return std::visit(Overloaded{
                          [&](const Const& c) -> std::optional<std::int64_t> { return c.value; },
                          [&](const Var& v) -> std::optional<std::int64_t> {
                              for (const auto& [name, value] : env) {
                                  if (name == v.name) {
                                      return value;
                                  }
                              }
                              throw std::out_of_range("unbound variable '" + v.name + "'");
                          },
                          [&](const Unary& u) -> std::optional<std::int64_t> {
                              const auto a = evaluate(*u.operand, env, bounds, diags);
                              if (!a) {
                                  return std::nullopt;
                              }
                              return apply_unary(u.op, *a, bounds, diags);
                          },
                          [&](const Binary& b) -> std::optional<std::int64_t> {
                              const auto x = evaluate(*b.lhs, env, bounds, diags);
                              const auto y = evaluate(*b.rhs, env, bounds, diags);
                              if (!x || !y) {
                                  return std::nullopt;
                              }
                              return apply_binary(b.op, *x, *y, bounds, diags);
                          },
                          [&](const Assign& a) { return evaluate(*a.value, env, bounds, diags); },
                          [&](const Paren& p) { return evaluate(*p.inner, env, bounds, diags); },
                      },
                      e.node);
}

std::optional<std::int64_t> fold_constant(const Expr& e, const Bounds& bounds, Diagnostics* diags) {
    if (!read_vars(e).empty()) {
        return std::nullopt;
    }
    return evaluate(e, {}, bounds, diags);
}

} // namespace probint
