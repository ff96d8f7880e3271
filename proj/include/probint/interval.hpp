// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "probint/ast.hpp"
#include "probint/diagnostics.hpp"
#include "probint/hardware_spec.hpp"

namespace probint {

// Closed integer interval or the empty interval.
class Interval {
  public:
    Interval() = default;
    Interval(std::int64_t lo, std::int64_t hi);

    static Interval empty() { return Interval{}; }
    static Interval singleton(std::int64_t v) { return {v, v}; }
    static Interval full(const Bounds& b) { return {b.lo, b.hi}; }

    [[nodiscard]] bool is_empty() const { return empty_; }
    [[nodiscard]] std::int64_t lo() const { return lo_; }
    [[nodiscard]] std::int64_t hi() const { return hi_; }
    // Number of integers; 0 for the empty interval.
    [[nodiscard]] double width() const;
    [[nodiscard]] bool contains(std::int64_t v) const { return !empty_ && lo_ <= v && v <= hi_; }
    [[nodiscard]] bool subset_of(const Interval& o) const;
    [[nodiscard]] bool is_singleton() const { return !empty_ && lo_ == hi_; }

    [[nodiscard]] Interval hull(const Interval& o) const;
    [[nodiscard]] Interval intersect(const Interval& o) const;

    friend bool operator==(const Interval&, const Interval&) = default;

  private:
    bool empty_ = true;
    std::int64_t lo_ = 0;
    std::int64_t hi_ = -1;
};

std::string to_string(const Interval& i);

// Interval counterparts of the machine operations; every result is clamped to
// the machine bounds. A divisor containing zero gives the full range and a warning.
Interval interval_binary(BinaryOp op, const Interval& a, const Interval& b, const Bounds& bounds,
                         Diagnostics* diags = nullptr);
Interval interval_unary(UnaryOp op, const Interval& a, const Bounds& bounds, Diagnostics* diags = nullptr);

using IntervalEnv = std::map<std::string, Interval, std::less<>>;

// Throws std::out_of_range for an unbound variable.
Interval interval_eval(const Expr& e, const IntervalEnv& env, const Bounds& bounds, Diagnostics* diags = nullptr);

} // namespace probint
