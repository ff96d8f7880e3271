// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace probint::testing {

std::string corpus_path(const std::string& name) { return std::string(PROBINT_CORPUS) + "/" + name; }

std::string read_corpus(const std::string& name) {
    std::ifstream in(corpus_path(name));
    if (!in) {
        std::cerr << "missing corpus file " << name << '\n';
        std::abort();
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Analysis analyze_source(const std::string& source, const HardwareSpec& spec, Domain domain, bool widen,
                        int max_iters, Schedule schedule) {
    const auto program = parse_program(source);
    Analysis a{build_cfg(*program), {}};
    SolveOptions opts;
    opts.domain = domain;
    opts.max_iters = max_iters;
    opts.schedule = schedule;
    if (widen) {
        opts.widening = thresholds_from_cfg(a.cfg, spec.bounds);
    }
    a.result = solve(build_equations(a.cfg), spec, opts);
    return a;
}

NodeId node_at_line(const Cfg& cfg, int line) {
    std::optional<NodeId> found;
    for (const auto& n : cfg.nodes) {
        if (n.line == line) {
            if (found) {
                std::cerr << "two nodes on line " << line << '\n';
                std::abort();
            }
            found = n.id;
        }
    }
    if (!found) {
        std::cerr << "no node on line " << line << '\n';
        std::abort();
    }
    return *found;
}

bool rel_close(double actual, double expected, double tol) {
    return std::fabs(actual - expected) <= tol * std::fabs(expected);
}

HardwareSpec spec_1e4() { return HardwareSpec::uniform(1.0 - 1e-4, Bounds{-32768, 32767}); }
HardwareSpec spec_1e7() { return HardwareSpec::uniform(1.0 - 1e-7, Bounds{-32768, 32767}); }

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string literal(std::mt19937_64& rng) {
    const int v = pick(rng, -4, 4);
    return v < 0 ? "-." + std::to_string(-v) : std::to_string(v);
}

// `budget` bounds the total number of statements, nested ones included.
std::string statements(std::mt19937_64& rng, const std::vector<std::string>& vars, int count, int depth, int& budget) {
    std::string out;
    for (int i = 0; i < count && budget > 0; ++i) {
        --budget;
        if (depth < 2 && pick(rng, 0, 3) == 0) {
            out += "if (" + random_guard(rng, vars) + ") {\n" +
                   statements(rng, vars, pick(rng, 0, 2), depth + 1, budget) + "}";
            if (pick(rng, 0, 1) == 0) {
                out += " else {\n" + statements(rng, vars, pick(rng, 0, 2), depth + 1, budget) + "}";
            }
            out += "\n";
        } else {
            out += vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(vars.size()) - 1))] + " =. " +
                   random_expr(rng, vars, 2) + ";\n";
        }
    }
    return out;
}

} // namespace

std::string random_expr(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
    const int choice = pick(rng, 0, depth == 0 ? 1 : 5);
    if (choice == 0) {
        return literal(rng);
    }
    if (choice == 1) {
        return vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(vars.size()) - 1))];
    }
    static const char* const kOps[] = {"+.", "-.", "*.", "/.", "%."};
    const std::string op = kOps[pick(rng, 0, 4)];
    return "(" + random_expr(rng, vars, depth - 1) + " " + op + " " + random_expr(rng, vars, depth - 1) + ")";
}

std::string random_guard(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    static const char* const kCmp[] = {"<.", "<=.", ">.", ">=.", "==.", "!=."};
    const std::string& v = vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(vars.size()) - 1))];
    switch (pick(rng, 0, 2)) {
    case 0: return v + " " + kCmp[pick(rng, 0, 5)] + " " + literal(rng);
    case 1: return v + " %. " + std::to_string(pick(rng, 2, 4)) + " " + (pick(rng, 0, 1) == 0 ? "==." : "!=.") + " " +
                   std::to_string(pick(rng, 0, 2));
    default: return random_expr(rng, vars, 1) + " " + kCmp[pick(rng, 0, 5)] + " " + random_expr(rng, vars, 1);
    }
}

std::string random_loop_free_program(std::mt19937_64& rng, int max_stmts) {
    static const std::vector<std::string> kAll = {"a", "b", "c"};
    const std::vector<std::string> vars(kAll.begin(), kAll.begin() + pick(rng, 1, 3));
    int budget = pick(rng, 1, max_stmts);
    return statements(rng, vars, budget, 0, budget);
}

AbstractElement random_abstract(std::mt19937_64& rng, const Bounds& b, bool allow_bottom) {
    if (allow_bottom && pick(rng, 0, 15) == 0) {
        return AbstractElement::bottom();
    }
    auto lo = std::uniform_int_distribution<std::int64_t>(b.lo, b.hi)(rng);
    auto hi = std::uniform_int_distribution<std::int64_t>(b.lo, b.hi)(rng);
    if (lo > hi) {
        std::swap(lo, hi);
    }
    return {Interval{lo, hi}, std::uniform_real_distribution<double>(0.0, 1.0)(rng)};
}

ConcreteElement random_concrete(std::mt19937_64& rng, const Bounds& b, bool allow_bottom) {
    if (allow_bottom && pick(rng, 0, 15) == 0) {
        return ConcreteElement::bottom();
    }
    std::vector<std::int64_t> values;
    const int n = pick(rng, 1, 6);
    for (int i = 0; i < n; ++i) {
        values.push_back(std::uniform_int_distribution<std::int64_t>(b.lo, b.hi)(rng));
    }
    return ConcreteElement::of(std::move(values), std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

} // namespace probint::testing
