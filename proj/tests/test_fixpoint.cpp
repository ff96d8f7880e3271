// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "probint/fixpoint.hpp"
#include "probint/parser.hpp"
#include "support.hpp"

using namespace probint;
using namespace probint::testing;

namespace {

const std::vector<const char*> kLoopPrograms{"step3.up", "collatz.up", "factorial.up", "reverse.up"};

// One application of every equation to the final abstract vector.
std::vector<AbstractState> apply_once(const Cfg& cfg, const std::vector<AbstractState>& g, const HardwareSpec& spec) {
    std::vector<AbstractState> out;
    for (const auto& node : cfg.nodes) {
        auto acc = node.id == cfg.entry ? AbstractState::entry(cfg.variables, spec.bounds)
                                        : AbstractState::bottom(cfg.variables);
        for (const auto idx : cfg.in_edges(node.id)) {
            const auto& e = cfg.edges[idx];
            const auto& src = g[e.from];
            const auto next = std::visit(
                [&](const auto& label) -> AbstractState {
                    using T = std::decay_t<decltype(label)>;
                    if constexpr (std::is_same_v<T, AssignLabel>) {
                        return sp_assign(src, label.target, *label.value, spec);
                    } else if constexpr (std::is_same_v<T, GuardLabel>) {
                        return sp_guard(src, *label.cond, spec);
                    } else {
                        return src;
                    }
                },
                e.label);
            acc = join(acc, next);
        }
        out.push_back(acc);
    }
    return out;
}

Analysis analyze_file(const char* name, Domain domain, bool widen = false, int max_iters = 20,
                      Schedule schedule = Schedule::RoundRobin) {
    return analyze_source(read_corpus(name), spec_1e4(), domain, widen, max_iters, schedule);
}

} // namespace

TEST(Equations, MirrorIncomingEdges) {
    const auto step = build_cfg(*parse_program(read_corpus("step3.up")));
    const auto sys = build_equations(step);
    ASSERT_EQ(sys.equations.size(), 4U);
    EXPECT_TRUE(sys.equations[0].seeded);
    EXPECT_TRUE(sys.equations[0].incoming.empty());
    EXPECT_EQ(sys.equations[1].incoming.size(), 2U);
    EXPECT_EQ(sys.equations[2].incoming.size(), 1U);
    EXPECT_EQ(sys.equations[3].incoming.size(), 1U);
    EXPECT_EQ(sys.vars, std::vector<std::string>{"x"});

    const auto collatz = build_cfg(*parse_program(read_corpus("collatz.up")));
    const auto cs = build_equations(collatz);
    ASSERT_EQ(cs.equations.size(), 6U);
    // the loop head joins the entry assignment and both branch assignments
    EXPECT_EQ(cs.equations[1].incoming.size(), 3U);

    const auto empty = build_equations(build_cfg(*parse_program("")));
    ASSERT_EQ(empty.equations.size(), 1U);
    EXPECT_TRUE(empty.equations[0].seeded);
}

TEST(Solve, RejectsBadOptions) {
    const auto sys = build_equations(build_cfg(*parse_program(read_corpus("step3.up"))));
    SolveOptions o;
    o.max_iters = 0;
    EXPECT_THROW(solve(sys, spec_1e4(), o), std::invalid_argument);
    o.max_iters = 20;
    o.domain = Domain::Concrete;
    o.widening = ThresholdSet({}, Bounds{});
    EXPECT_THROW(solve(sys, spec_1e4(), o), std::invalid_argument);
}

TEST(Solve, OracleBlowupPropagates) {
    const auto sys = build_equations(build_cfg(*parse_program("a =. a +. b +. c")));
    SolveOptions o;
    o.domain = Domain::Concrete;
    o.limits.max_tuples = 1000;
    EXPECT_THROW(solve(sys, spec_1e4(), o), OracleBlowup);
}

TEST(Solve, CounterNeedsWidening) {
    const auto plain = analyze_file("counter1000.up", Domain::Abstract);
    EXPECT_FALSE(plain.result.converged);
    EXPECT_EQ(plain.result.iterations, 20);
    const auto widened = analyze_file("counter1000.up", Domain::Abstract, true);
    EXPECT_TRUE(widened.result.converged);
    EXPECT_LE(widened.result.iterations, 20);
}

TEST(Soundness, StepAndCollatz) {
    const auto c = analyze_file("step3.up", Domain::Concrete);
    EXPECT_TRUE(check_soundness(c.result, analyze_file("step3.up", Domain::Abstract).result).ok());
    const auto spec = spec_1e7();
    const auto cc = analyze_source(read_corpus("collatz.up"), spec, Domain::Concrete);
    const auto cw = analyze_source(read_corpus("collatz.up"), spec, Domain::Abstract, true);
    EXPECT_TRUE(check_soundness(cc.result, cw.result).ok());
}

TEST(Soundness, CorruptedValueIsReported) {
    const auto c = analyze_file("step3.up", Domain::Concrete);
    auto a = analyze_file("step3.up", Domain::Abstract);
    const NodeId g1 = node_at_line(a.cfg, 2);
    a.result.abstract[g1].set("x", AbstractElement{{0, 5}, 1.0});
    const auto report = check_soundness(c.result, a.result);
    ASSERT_EQ(report.violations.size(), 1U);
    EXPECT_EQ(report.violations[0].node, g1);
    EXPECT_EQ(report.violations[0].var, "x");
}

TEST(Solve, ConvergedMeansFixed) {
    for (const char* name : kLoopPrograms) {
        for (const bool widen : {false, true}) {
            const auto a = analyze_file(name, Domain::Abstract, widen);
            if (!a.result.converged) {
                continue;
            }
            const auto again = apply_once(a.cfg, a.result.abstract, spec_1e4());
            for (const auto& node : a.cfg.nodes) {
                const auto& now = a.result.abstract[node.id];
                if (widen) {
                    for (const auto& [v, e] : again[node.id].vars()) {
                        EXPECT_TRUE(e.interval.subset_of(now.at(v).interval)) << name << " v" << node.id;
                    }
                } else {
                    EXPECT_TRUE(same_intervals(again[node.id], now)) << name << " v" << node.id;
                }
            }
        }
    }
}

TEST(Solve, UnwidenedIteratesIncrease) {
    for (const char* name : {"step3.up", "collatz.up", "counter1000.up"}) {
        for (const Domain d : {Domain::Abstract, Domain::Concrete}) {
            if (d == Domain::Concrete && std::string(name) == "counter1000.up") {
                continue;
            }
            auto prev = analyze_file(name, d, false, 1);
            for (int k = 2; k <= 12; ++k) {
                const auto next = analyze_file(name, d, false, k);
                for (const auto& node : next.cfg.nodes) {
                    if (d == Domain::Abstract) {
                        EXPECT_TRUE(leq(prev.result.abstract[node.id], next.result.abstract[node.id]))
                            << name << " v" << node.id << " k=" << k;
                    } else {
                        EXPECT_TRUE(leq(prev.result.concrete[node.id], next.result.concrete[node.id]))
                            << name << " v" << node.id << " k=" << k;
                    }
                }
                prev = next;
            }
        }
    }
}

TEST(Solve, WidenedLimitCoversUnwidened) {
    for (const char* name : kLoopPrograms) {
        const auto plain = analyze_file(name, Domain::Abstract);
        const auto wide = analyze_file(name, Domain::Abstract, true);
        ASSERT_TRUE(wide.result.converged) << name;
        if (!plain.result.converged) {
            continue;
        }
        for (const auto& node : plain.cfg.nodes) {
            for (const auto& [v, e] : plain.result.abstract[node.id].vars()) {
                EXPECT_TRUE(e.interval.subset_of(wide.result.abstract[node.id].at(v).interval)) << name;
            }
        }
    }
}

TEST(Solve, SchedulesAgreeAtFixpoint) {
    for (const char* name : {"step3.up", "collatz.up"}) {
        const auto rr = analyze_file(name, Domain::Abstract, false, 50);
        ASSERT_TRUE(rr.result.converged) << name;
        for (const Schedule s : {Schedule::Jacobi, Schedule::Worklist}) {
            const auto other = analyze_file(name, Domain::Abstract, false, 50, s);
            ASSERT_TRUE(other.result.converged) << name << ' ' << to_string(s);
            for (const auto& node : rr.cfg.nodes) {
                EXPECT_TRUE(same_intervals(rr.result.abstract[node.id], other.result.abstract[node.id]))
                    << name << ' ' << to_string(s) << " v" << node.id;
            }
        }
    }
}

TEST(Solve, SoundOnRandomProgramsAcrossSchedules) {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 100; ++i) {
        const auto src = random_loop_free_program(rng);
        auto spec = HardwareSpec::uniform(0.9, Bounds{-8, 8});
        const auto c = analyze_source(src, spec, Domain::Concrete);
        for (const Schedule s : {Schedule::RoundRobin, Schedule::Jacobi, Schedule::Worklist}) {
            const auto a = analyze_source(src, spec, Domain::Abstract, false, 20, s);
            EXPECT_TRUE(check_soundness(c.result, a.result).ok()) << src << to_string(s);
        }
    }
}

TEST(CheckLiterals, OutOfRange) {
    const Bounds b{-8, 8};
    EXPECT_NO_THROW(check_literals(*parse_program("x =. -.8 +. 8"), b));
    EXPECT_THROW(check_literals(*parse_program("x =. 9"), b), FrontendError);
    EXPECT_THROW(check_literals(*parse_program("x =. -.9"), b), FrontendError);
}

TEST(Solve, CollatzAbstractProbabilities) {
    const auto spec = spec_1e7();
    const auto plain = analyze_source(read_corpus("collatz.up"), spec, Domain::Abstract);
    const auto prob = [](const Analysis& a, int line) { return a.result.abstract[node_at_line(a.cfg, line)].at("x").prob; };
    EXPECT_TRUE(rel_close(prob(plain, 4), 0.999969331495, 1e-9));
    EXPECT_TRUE(rel_close(prob(plain, 5), 0.999938563004, 1e-9));
    EXPECT_TRUE(rel_close(prob(plain, 7), 0.999938563004, 1e-9));
    EXPECT_TRUE(rel_close(prob(plain, 8), 0.00409836004098, 1e-9));
    const auto widened = analyze_source(read_corpus("collatz.up"), spec, Domain::Abstract, true);
    EXPECT_TRUE(rel_close(prob(widened, 8), 3.05185048982e-5, 1e-9));
}
