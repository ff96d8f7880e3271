// SPDX-License-Identifier: Apache-2.0
#include "probint/interval.hpp"

#include <algorithm>
#include <array>
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

Interval clamp_range(Wide lo, Wide hi, const Bounds& bounds, std::string_view op, Diagnostics* diags) {
    if (lo < bounds.lo || hi > bounds.hi) {
        warn(diags, "possible overflow in '" + std::string(op) + "' clamped to [" + std::to_string(bounds.lo) + "," +
                        std::to_string(bounds.hi) + "]");
    }
    const auto clamp = [&](Wide v) {
        return static_cast<std::int64_t>(std::clamp<Wide>(v, bounds.lo, bounds.hi));
    };
    return {clamp(lo), clamp(hi)};
}

Interval corners(const std::array<Wide, 4>& c, const Bounds& bounds, std::string_view op, Diagnostics* diags) {
    const auto [mn, mx] = std::minmax_element(c.begin(), c.end());
    return clamp_range(*mn, *mx, bounds, op, diags);
}

enum class Truth { False, True, Unknown };

Truth truth(const Interval& i) {
    if (i.lo() == 0 && i.hi() == 0) {
        return Truth::False;
    }
    return i.contains(0) ? Truth::Unknown : Truth::True;
}

Interval from_truth(Truth t) {
    switch (t) {
    case Truth::False: return Interval::singleton(0);
    case Truth::True: return Interval::singleton(1);
    case Truth::Unknown: return {0, 1};
    }
    return {0, 1};
}

Truth decide(bool always, bool never) {
    if (always) {
        return Truth::True;
    }
    return never ? Truth::False : Truth::Unknown;
}

Wide abs_wide(std::int64_t v) { return v < 0 ? -static_cast<Wide>(v) : static_cast<Wide>(v); }

// Dividend part lying entirely on one side of zero.
Interval mod_part(std::int64_t l, std::int64_t h, const Interval& divisor) {
    const Wide max_abs = std::max(abs_wide(divisor.lo()), abs_wide(divisor.hi()));
    const Wide min_abs = std::min(abs_wide(divisor.lo()), abs_wide(divisor.hi()));
    const bool nonneg = l >= 0;
    if (std::max(abs_wide(l), abs_wide(h)) < min_abs) {
        return {l, h};
    }
    if (divisor.is_singleton()) {
        const auto k = static_cast<std::int64_t>(max_abs);
        if (l / k == h / k) {
            return {l % k, h % k};
        }
        return nonneg ? Interval{0, k - 1} : Interval{-(k - 1), 0};
    }
    const auto bound = static_cast<std::int64_t>(max_abs - 1);
    return nonneg ? Interval{0, std::min<std::int64_t>(h, bound)} : Interval{std::max<std::int64_t>(l, -bound), 0};
}

} // namespace

Interval::Interval(std::int64_t lo, std::int64_t hi) : empty_(lo > hi), lo_(lo), hi_(hi) {
    if (empty_) {
        lo_ = 0;
        hi_ = -1;
    }
}

double Interval::width() const {
    return empty_ ? 0.0 : static_cast<double>(static_cast<Wide>(hi_) - lo_ + 1);
}

bool Interval::subset_of(const Interval& o) const {
    if (empty_) {
        return true;
    }
    return !o.empty_ && o.lo_ <= lo_ && hi_ <= o.hi_;
}

Interval Interval::hull(const Interval& o) const {
    if (empty_) {
        return o;
    }
    if (o.empty_) {
        return *this;
    }
    return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)};
}

Interval Interval::intersect(const Interval& o) const {
    if (empty_ || o.empty_) {
        return empty();
    }
    return {std::max(lo_, o.lo_), std::min(hi_, o.hi_)};
}

std::string to_string(const Interval& i) {
    if (i.is_empty()) {
        return "[]";
    }
    return "[" + std::to_string(i.lo()) + "," + std::to_string(i.hi()) + "]";
}

Interval interval_binary(BinaryOp op, const Interval& a, const Interval& b, const Bounds& bounds,
                         Diagnostics* diags) {
    if (a.is_empty() || b.is_empty()) {
        return Interval::empty();
    }
    const Wide al = a.lo();
    const Wide ah = a.hi();
    const Wide bl = b.lo();
    const Wide bh = b.hi();
    const auto sp = spelling(op);
    switch (op) {
    case BinaryOp::Add: return clamp_range(al + bl, ah + bh, bounds, sp, diags);
    case BinaryOp::Sub: return clamp_range(al - bh, ah - bl, bounds, sp, diags);
    case BinaryOp::Mul: return corners({al * bl, al * bh, ah * bl, ah * bh}, bounds, sp, diags);
    case BinaryOp::Div:
    case BinaryOp::Mod: {
        if (b.contains(0)) {
            warn(diags, std::string(op == BinaryOp::Div ? "division" : "modulo") + " by an interval containing zero " +
                            "(" + to_string(a) + " " + std::string(sp) + " " + to_string(b) +
                            "): result widened to the full range");
            return Interval::full(bounds);
        }
        if (op == BinaryOp::Div) {
            return corners({al / bl, al / bh, ah / bl, ah / bh}, bounds, sp, diags);
        }
        Interval out = Interval::empty();
        if (a.lo() < 0) {
            out = out.hull(mod_part(a.lo(), std::min<std::int64_t>(a.hi(), -1), b));
        }
        if (a.hi() >= 0) {
            out = out.hull(mod_part(std::max<std::int64_t>(a.lo(), 0), a.hi(), b));
        }
        return out.intersect(Interval::full(bounds));
    }
    case BinaryOp::Lt: return from_truth(decide(ah < bl, al >= bh));
    case BinaryOp::Le: return from_truth(decide(ah <= bl, al > bh));
    case BinaryOp::Gt: return from_truth(decide(al > bh, ah <= bl));
    case BinaryOp::Ge: return from_truth(decide(al >= bh, ah < bl));
    case BinaryOp::Eq: return from_truth(decide(a.is_singleton() && a == b, a.intersect(b).is_empty()));
    case BinaryOp::Ne: return from_truth(decide(a.intersect(b).is_empty(), a.is_singleton() && a == b));
    case BinaryOp::And: {
        const Truth x = truth(a);
        const Truth y = truth(b);
        return from_truth(decide(x == Truth::True && y == Truth::True, x == Truth::False || y == Truth::False));
    }
    case BinaryOp::Or: {
        const Truth x = truth(a);
        const Truth y = truth(b);
        return from_truth(decide(x == Truth::True || y == Truth::True, x == Truth::False && y == Truth::False));
    }
    }
    return Interval::full(bounds);
}

Interval interval_unary(UnaryOp op, const Interval& a, const Bounds& bounds, Diagnostics* diags) {
    if (a.is_empty()) {
        return a;
    }
    switch (op) {
    case UnaryOp::Neg: return clamp_range(-static_cast<Wide>(a.hi()), -static_cast<Wide>(a.lo()), bounds, "-.", diags);
    case UnaryOp::Plus: return a;
    case UnaryOp::Not: {
        const Truth t = truth(a);
        return from_truth(t == Truth::Unknown ? t : (t == Truth::True ? Truth::False : Truth::True));
    }
    }
    return a;
}

Interval interval_eval(const Expr& e, const IntervalEnv& env, const Bounds& bounds, Diagnostics* diags) {
    return std::visit(Overloaded{
                          [&](const Const& c) { return Interval::singleton(c.value); },
                          [&](const Var& v) {
                              const auto it = env.find(v.name);
                              if (it == env.end()) {
                                  throw std::out_of_range("unbound variable '" + v.name + "'");
                              }
                              return it->second;
                          },
                          [&](const Unary& u) {
                              return interval_unary(u.op, interval_eval(*u.operand, env, bounds, diags), bounds, diags);
                          },
                          [&](const Binary& b) {
                              return interval_binary(b.op, interval_eval(*b.lhs, env, bounds, diags),
                                                     interval_eval(*b.rhs, env, bounds, diags), bounds, diags);
                          },
                          [&](const Assign& a) { return interval_eval(*a.value, env, bounds, diags); },
                          [&](const Paren& p) { return interval_eval(*p.inner, env, bounds, diags); },
                      },
                      e.node);
}

} // namespace probint
