// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "probint/abstract_domain.hpp"
#include "probint/cfg.hpp"
#include "probint/concrete_domain.hpp"
#include "probint/eval.hpp"
#include "probint/interval.hpp"
#include "probint/parser.hpp"
#include "support.hpp"

using namespace probint;
using namespace probint::testing;

namespace {

const Bounds kSmall{-4, 4};
const std::vector<std::string> kVars{"a", "b"};

AbstractState random_state(std::mt19937_64& rng, const Bounds& b = kSmall) {
    AbstractVars vars;
    for (const auto& v : kVars) {
        vars.emplace(v, random_abstract(rng, b, false));
    }
    return AbstractState(std::move(vars));
}

Interval random_interval(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    auto x = d(rng);
    auto y = d(rng);
    if (x > y) {
        std::swap(x, y);
    }
    return {x, y};
}

std::vector<std::int64_t> threshold_values(const std::string& source, const Bounds& b) {
    return thresholds_from_cfg(build_cfg(*parse_program(source)), b).values();
}

} // namespace

TEST(AbstractElement, JoinMeetExamples) {
    const AbstractElement a{{0, 3}, 0.8};
    const AbstractElement b{{2, 5}, 0.6};
    const auto j = join(a, b);
    EXPECT_EQ(j.interval, Interval(0, 5));
    EXPECT_NEAR(j.prob, 6 * 0.15, 1e-15);
    const auto m = meet(a, b);
    EXPECT_EQ(m.interval, Interval(2, 3));
    EXPECT_NEAR(m.prob, 2 * 0.2, 1e-15);
    // Mass per value is capped at 1 / width.
    const auto capped = join(AbstractElement{{0, 1}, 1.0}, AbstractElement{{3, 3}, 1.0});
    EXPECT_EQ(capped.interval, Interval(0, 3));
    EXPECT_NEAR(capped.prob, 1.0, 1e-15);
    EXPECT_EQ(join(a, AbstractElement::bottom()), a);
    EXPECT_TRUE(meet(a, AbstractElement{{7, 8}, 1.0}).is_bottom());
}

TEST(AbstractElement, MeetOfFullMassElements) {
    Diagnostics diags;
    const auto m = meet(AbstractElement{{0, 0}, 1.0}, AbstractElement{{0, 3}, 1.0}, &diags);
    EXPECT_EQ(m.interval, Interval(0, 0));
    EXPECT_NEAR(m.prob, 1.0, 1e-15);
    const auto wide = meet(AbstractElement{{0, 1}, 1.0}, AbstractElement{{0, 3}, 1.0}, &diags);
    EXPECT_NEAR(wide.prob, 1.0, 1e-15);
    EXPECT_TRUE(diags.empty());
}

TEST(AbstractElement, AlphaGammaExamples) {
    const auto m = alpha(ConcreteElement::of({1, 3}, 0.3));
    EXPECT_EQ(m.interval, Interval(1, 3));
    EXPECT_NEAR(m.prob, 0.9, 1e-15);
    EXPECT_NEAR(alpha(ConcreteElement::of({1, 3}, 0.6)).prob, 1.0, 1e-15);
    const auto c = gamma(AbstractElement{{1, 3}, 0.9});
    EXPECT_EQ(c.values, (std::vector<std::int64_t>{1, 2, 3}));
    EXPECT_NEAR(c.prob, 0.3, 1e-15);
    EXPECT_TRUE(alpha(ConcreteElement::bottom()).is_bottom());
    EXPECT_TRUE(gamma(AbstractElement::bottom()).is_bottom());
    EXPECT_EQ(to_string(AbstractElement{{0, 12}, 1.0}), "<[0,12], 1>");
}

TEST(AbstractTransfer, StepExampleGuard) {
    AbstractState s(AbstractVars{{"x", AbstractElement{{0, 12}, 1.0}}});
    const auto out = sp_guard(s, *parse_expression("x >=. 10"), spec_1e4());
    EXPECT_EQ(out.at("x").interval, Interval(10, 12));
    EXPECT_TRUE(rel_close(out.at("x").prob, 0.23073461688, 1e-9));
    const auto inside = sp_guard(s, *parse_expression("x <=. 9"), spec_1e4());
    EXPECT_EQ(inside.at("x").interval, Interval(0, 9));
    EXPECT_TRUE(sp_guard(s, *parse_expression("x >=. 13"), spec_1e4()).is_bottom());
}

TEST(AbstractTransfer, CongruenceGuard) {
    const auto spec = spec_1e7();
    AbstractState s(AbstractVars{{"x", AbstractElement{{2, 32767}, 0.75}}});
    const auto even = sp_guard(s, *parse_expression("x %. 2 ==. 0"), spec);
    EXPECT_EQ(even.at("x").interval, Interval(2, 32766));
    const double expected = 0.75 * (32765.0 / 32766.0) * rel(spec, OpKind::Read) * rel(spec, OpKind::Mod) *
                            rel(spec, OpKind::Eq);
    EXPECT_TRUE(rel_close(even.at("x").prob, expected, 1e-12));
    const auto odd = sp_guard(s, *parse_expression("x %. 2 !=. 0"), spec);
    EXPECT_EQ(odd.at("x").interval, Interval(3, 32767));
}

TEST(AbstractTransfer, RefineGuardShapes) {
    const IntervalEnv env{{"x", Interval(-5, 5)}, {"y", Interval(0, 3)}};
    const auto check = [&](const char* src, const char* var, Interval expected) {
        const auto r = refine_guard(*parse_expression(src), env, kSmall);
        ASSERT_TRUE(r.has_value()) << src;
        EXPECT_EQ(r->var, var) << src;
        EXPECT_EQ(r->interval, expected) << src;
    };
    check("x <=. 2", "x", {-5, 2});
    check("3 <=. x", "x", {3, 5});
    check("x ==. 1 +. 1", "x", {2, 2});
    check("x >=. -.1", "x", {-1, 5});
    check("x %. 3 ==. 1", "x", {1, 4});
    check("x %. 3 ==. -.1", "x", {-4, -1});
    EXPECT_FALSE(refine_guard(*parse_expression("x <=. y"), env, kSmall).has_value());
}

TEST(AbstractTransfer, AssignExample) {
    const auto spec = spec_1e4();
    AbstractState s(AbstractVars{{"x", AbstractElement{{0, 9}, 0.9998500065}}});
    const auto out = sp_assign(s, "x", *parse_expression("x +. 3"), spec);
    EXPECT_EQ(out.at("x").interval, Interval(3, 12));
    const double arith = rel(spec, OpKind::Add);
    EXPECT_TRUE(rel_close(out.at("x").prob, 0.9998500065 * arith * arith * arith, 1e-12));
}

TEST(Thresholds, FromPrograms) {
    const Bounds b;
    EXPECT_EQ(threshold_values(read_corpus("step3.up"), b),
              (std::vector<std::int64_t>{-32768, 0, 3, 9, 10, 32767}));
    EXPECT_EQ(threshold_values(read_corpus("collatz.up"), b),
              (std::vector<std::int64_t>{-32768, 0, 1, 2, 3, 10, 32767}));
    EXPECT_EQ(threshold_values("x =. y", b), (std::vector<std::int64_t>{-32768, 32767}));
    EXPECT_EQ(threshold_values("x =. -.5", b), (std::vector<std::int64_t>{-32768, -5, 32767}));
    const ThresholdSet t({0, 9, 10}, b);
    EXPECT_EQ(t.below(5), 0);
    EXPECT_EQ(t.above(5), 9);
    EXPECT_EQ(t.above(9), 9);
    EXPECT_EQ(t.below(-1), -32768);
}

TEST(Widening, Examples) {
    const ThresholdSet t({0, 3, 9, 10}, Bounds{});
    const auto w = widen_threshold(AbstractElement{{0, 3}, 1.0}, AbstractElement{{0, 6}, 1.0}, t);
    EXPECT_EQ(w.interval, Interval(0, 9));
    EXPECT_NEAR(w.prob, 1.0, 1e-15);
    const AbstractElement x{{0, 3}, 0.5};
    EXPECT_EQ(widen_threshold(x, AbstractElement::bottom(), t), x);
    EXPECT_EQ(widen_threshold(AbstractElement::bottom(), x, t), x);
    EXPECT_EQ(widen_threshold(x, AbstractElement{{1, 2}, 0.5}, t), x);
    const auto up = widen_threshold(x, AbstractElement{{0, 11}, 0.5}, t);
    EXPECT_EQ(up.interval, Interval(0, 32767));
}

TEST(Widening, CoversBothIntervals) {
    std::mt19937_64 rng(29);
    const Bounds b{-20, 20};
    for (int i = 0; i < 3000; ++i) {
        std::vector<std::int64_t> values;
        for (int k = 0; k < 4; ++k) {
            values.push_back(std::uniform_int_distribution<std::int64_t>(b.lo, b.hi)(rng));
        }
        const ThresholdSet t(values, b);
        const auto old_e = random_abstract(rng, b);
        const auto new_e = random_abstract(rng, b);
        const auto w = widen_threshold(old_e, new_e, t);
        EXPECT_TRUE(old_e.interval.subset_of(w.interval));
        EXPECT_TRUE(new_e.interval.subset_of(w.interval));
        EXPECT_LE(w.prob, 1.0 + kPmfTolerance);
        EXPECT_GE(w.prob, 0.0);
    }
}

// Widened iteration over an increasing chain stops moving after at most |T|^2 steps.
TEST(Widening, ChainsStabilize) {
    std::mt19937_64 rng(31);
    const Bounds b{-50, 50};
    for (int i = 0; i < 300; ++i) {
        const ThresholdSet t({-10, 0, 7, 20}, b);
        const auto limit = t.values().size() * t.values().size();
        AbstractElement x = random_abstract(rng, b, false);
        AbstractElement y = x;
        std::size_t last_change = 0;
        for (std::size_t step = 1; step <= 200; ++step) {
            x = join(x, random_abstract(rng, b, false));
            const auto next = widen_threshold(y, x, t);
            if (!(next.interval == y.interval)) {
                last_change = step;
            }
            y = next;
        }
        EXPECT_LE(last_change, limit);
    }
}

TEST(AbstractLattice, OrderLaws) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 5000; ++i) {
        const auto a = random_abstract(rng, kSmall);
        const auto b = random_abstract(rng, kSmall);
        const auto c = random_abstract(rng, kSmall);
        EXPECT_TRUE(leq(a, a));
        if (leq(a, b) && leq(b, c)) {
            EXPECT_TRUE(leq(a, c));
        }
        if (leq(a, b) && leq(b, a)) {
            EXPECT_EQ(a.interval, b.interval);
        }
        const auto j = join(a, b);
        EXPECT_TRUE(leq(a, j) && leq(b, j));
        EXPECT_TRUE(equivalent(j, join(b, a)));
        const auto m = meet(a, b);
        EXPECT_TRUE(leq(m, a) && leq(m, b));
        for (const auto& e : {j, m}) {
            EXPECT_LE(e.prob, 1.0 + kPmfTolerance);
            EXPECT_GE(e.prob, 0.0);
        }
    }
}

TEST(Galois, RoundTripIsIdentity) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 5000; ++i) {
        const auto m = random_abstract(rng, kSmall);
        const auto back = alpha(gamma(m));
        EXPECT_EQ(back.interval, m.interval);
        EXPECT_NEAR(back.prob, m.prob, 1e-12);
        const auto c = random_concrete(rng, kSmall);
        EXPECT_TRUE(leq(c, gamma(alpha(c))));
    }
}

// alpha(sp(gamma(m))) is below sp#(m) for assignments and guards.
TEST(AbstractTransfer, LocallySound) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 3000; ++i) {
        const auto spec = HardwareSpec::uniform(std::uniform_real_distribution<double>(0.5, 1.0)(rng), kSmall);
        const auto m = random_state(rng);
        const auto rhs = parse_expression(random_expr(rng, kVars, 2));
        const auto assigned = sp_assign(m, "a", *rhs, spec);
        const auto exact = alpha(sp_assign(gamma(m), "a", *rhs, spec));
        EXPECT_TRUE(leq(exact, assigned)) << to_source(*rhs) << " on a=" << to_string(m.at("a"))
                                          << " b=" << to_string(m.at("b"));
        const auto guard = parse_expression(random_guard(rng, kVars));
        const auto guarded = sp_guard(m, *guard, spec);
        const auto exact_guard = alpha(sp_guard(gamma(m), *guard, spec));
        EXPECT_TRUE(leq(exact_guard, guarded)) << to_source(*guard) << " on a=" << to_string(m.at("a"))
                                               << " b=" << to_string(m.at("b"));
    }
}

TEST(AbstractTransfer, ProbabilitiesStayInUnitInterval) {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 2000; ++i) {
        const auto spec = HardwareSpec::uniform(std::uniform_real_distribution<double>(0.0, 1.0)(rng), kSmall);
        const auto m = random_state(rng);
        const auto out = sp_assign(m, "b", *parse_expression(random_expr(rng, kVars, 3)), spec);
        for (const auto& [_, e] : out.vars()) {
            EXPECT_GE(e.prob, 0.0);
            EXPECT_LE(e.prob, 1.0);
        }
    }
}

// Arithmetic results equal the hull of all pointwise results; modulo and
// comparisons contain them.
TEST(IntervalArithmetic, AgainstEnumeration) {
    std::mt19937_64 rng(53);
    const Bounds b{-20, 20};
    const std::vector<BinaryOp> ops{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div, BinaryOp::Mod,
                                    BinaryOp::Lt,  BinaryOp::Le,  BinaryOp::Eq,  BinaryOp::Ne,  BinaryOp::And,
                                    BinaryOp::Or};
    for (int i = 0; i < 4000; ++i) {
        const auto op = ops[rng() % ops.size()];
        const auto x = random_interval(rng, -8, 8);
        auto y = random_interval(rng, -8, 8);
        if ((op == BinaryOp::Div || op == BinaryOp::Mod) && y.contains(0)) {
            y = y.lo() == 0 ? Interval(1, std::max<std::int64_t>(1, y.hi())) : Interval(y.lo(), -1);
        }
        std::optional<Interval> hull;
        for (auto u = x.lo(); u <= x.hi(); ++u) {
            for (auto v = y.lo(); v <= y.hi(); ++v) {
                const auto r = apply_binary(op, u, v, b);
                ASSERT_TRUE(r.has_value());
                hull = hull ? hull->hull(Interval::singleton(*r)) : Interval::singleton(*r);
            }
        }
        const auto got = interval_binary(op, x, y, b);
        EXPECT_TRUE(hull->subset_of(got)) << to_string(x) << ' ' << spelling(op) << ' ' << to_string(y);
        if (op != BinaryOp::Mod) {
            EXPECT_EQ(got, *hull) << to_string(x) << ' ' << spelling(op) << ' ' << to_string(y);
        }
    }
}

TEST(IntervalArithmetic, ZeroDivisorWidensWithWarning) {
    Diagnostics diags;
    const Bounds b{-20, 20};
    EXPECT_EQ(interval_binary(BinaryOp::Div, {1, 4}, {-1, 1}, b, &diags), Interval::full(b));
    EXPECT_EQ(interval_binary(BinaryOp::Mod, {1, 4}, {0, 0}, b, &diags), Interval::full(b));
    EXPECT_EQ(diags.size(), 2U);
}

TEST(IntervalArithmetic, ModuloFollowsDividendSign) {
    const Bounds b{-100, 100};
    EXPECT_EQ(interval_binary(BinaryOp::Mod, {0, 50}, {7, 7}, b), Interval(0, 6));
    EXPECT_EQ(interval_binary(BinaryOp::Mod, {-50, -1}, {7, 7}, b), Interval(-6, 0));
    EXPECT_EQ(interval_binary(BinaryOp::Mod, {8, 9}, {7, 7}, b), Interval(1, 2));
}
