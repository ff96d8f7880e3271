// SPDX-License-Identifier: Apache-2.0
#include "probint/fixpoint.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace probint {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct ConcreteOps {
    using State = ConcreteState;
    static std::vector<State>& slot(SolveResult& r) { return r.concrete; }
    static State transfer(const State& s, const EdgeLabel& label, const HardwareSpec& spec, Diagnostics* d,
                          const OracleLimits& limits) {
        return std::visit(Overloaded{
                              [&](const AssignLabel& a) { return sp_assign(s, a.target, *a.value, spec, d, limits); },
                              [&](const GuardLabel& g) { return sp_guard(s, *g.cond, spec, d, limits); },
                              [&](const SkipLabel&) { return s; },
                          },
                          label);
    }
    static bool same_shape(const State& a, const State& b) { return same_values(a, b); }
    static State widen(const State&, const State& n, const ThresholdSet&) { return n; }
    static std::string render(const State& s) {
        std::string out;
        for (const auto& [name, e] : s.vars()) {
            std::ostringstream os;
            os.precision(12);
            os << e.prob;
            out += (out.empty() ? "" : " ") + name + "=<" + to_string(e) + ", " + os.str() + ">";
        }
        return out;
    }
};

struct AbstractOps {
    using State = AbstractState;
    static std::vector<State>& slot(SolveResult& r) { return r.abstract; }
    static State transfer(const State& s, const EdgeLabel& label, const HardwareSpec& spec, Diagnostics* d,
                          const OracleLimits&) {
        return std::visit(Overloaded{
                              [&](const AssignLabel& a) { return sp_assign(s, a.target, *a.value, spec, d); },
                              [&](const GuardLabel& g) { return sp_guard(s, *g.cond, spec, d); },
                              [&](const SkipLabel&) { return s; },
                          },
                          label);
    }
    static bool same_shape(const State& a, const State& b) { return same_intervals(a, b); }
    static State widen(const State& o, const State& n, const ThresholdSet& t) { return widen_threshold(o, n, t); }
    static std::string render(const State& s) {
        std::string out;
        for (const auto& [name, e] : s.vars()) {
            out += (out.empty() ? "" : " ") + name + "=" + to_string(e);
        }
        return out;
    }
};

template <class Ops>
class Solver {
    using State = typename Ops::State;

  public:
    Solver(const EquationSystem& sys, const HardwareSpec& spec, const SolveOptions& opts, SolveResult& res)
        : sys_(sys), cfg_(*sys.cfg), spec_(spec), opts_(opts), res_(res), states_(Ops::slot(res)) {
        states_.assign(cfg_.nodes.size(), State::bottom(sys.vars));
        seed_ = State::entry(sys.vars, spec.bounds);
        order_ = cfg_.reverse_postorder();
        widen_at_ = cfg_.loop_heads();
        if (opts.widen_all) {
            widen_at_.assign(cfg_.nodes.size(), true);
        }
    }

    void run() {
        if (opts_.schedule == Schedule::Worklist) {
            run_worklist();
        } else {
            run_sweeps();
        }
        res_.warnings = diags_.warnings();
    }

  private:
    const EquationSystem& sys_;
    const Cfg& cfg_;
    const HardwareSpec& spec_;
    const SolveOptions& opts_;
    SolveResult& res_;
    std::vector<State>& states_;
    State seed_;
    std::vector<NodeId> order_;
    std::vector<bool> widen_at_;
    Diagnostics diags_;

    State evaluate(NodeId i, const std::vector<State>& src) {
        const Equation& eq = sys_.equations[i];
        State acc = eq.seeded ? seed_ : State::bottom(sys_.vars);
        for (const std::size_t e : eq.incoming) {
            const CfgEdge& edge = cfg_.edges[e];
            Diagnostics local;
            acc = join(acc, Ops::transfer(src[edge.from], edge.label, spec_, &local, opts_.limits));
            for (const auto& w : local.warnings()) {
                diags_.warn("line " + std::to_string(cfg_.nodes[edge.from].line) + ", " + to_string(edge.label) +
                            ": " + w);
            }
        }
        return acc;
    }

    bool update(NodeId i, State candidate) {
        if (opts_.widening && widen_at_[i]) {
            candidate = Ops::widen(states_[i], candidate, *opts_.widening);
        }
        if (Ops::same_shape(states_[i], candidate)) {
            return false;
        }
        states_[i] = std::move(candidate);
        if (opts_.trace) {
            res_.trace.push_back(TraceEntry{res_.rounds, i, Ops::render(states_[i])});
        }
        return true;
    }

    bool sweep() {
        ++res_.rounds;
        bool changed = false;
        if (opts_.schedule == Schedule::Jacobi) {
            const std::vector<State> frozen = states_;
            for (const NodeId i : order_) {
                changed |= update(i, evaluate(i, frozen));
            }
        } else {
            for (const NodeId i : order_) {
                changed |= update(i, evaluate(i, states_));
            }
        }
        return changed;
    }

    void run_sweeps() {
        for (;;) {
            if (!sweep()) {
                res_.converged = true;
                return;
            }
            ++res_.iterations;
            if (res_.iterations >= opts_.max_iters) {
                const auto snapshot = states_;
                const auto trace_size = res_.trace.size();
                if (!sweep()) {
                    res_.converged = true;
                } else {
                    states_ = snapshot;
                    res_.trace.resize(trace_size);
                }
                return;
            }
        }
    }

    void run_worklist() {
        std::vector<std::size_t> position(cfg_.nodes.size());
        for (std::size_t k = 0; k < order_.size(); ++k) {
            position[order_[k]] = k;
        }
        std::vector<std::vector<NodeId>> succ(cfg_.nodes.size());
        for (const auto& e : cfg_.edges) {
            succ[e.from].push_back(e.to);
        }
        const auto budget = static_cast<long long>(opts_.max_iters) * static_cast<long long>(cfg_.nodes.size());
        std::set<std::size_t> work;
        for (std::size_t k = 0; k < order_.size(); ++k) {
            work.insert(k);
        }
        while (!work.empty()) {
            if (res_.iterations >= budget) {
                return;
            }
            const NodeId i = order_[*work.begin()];
            work.erase(work.begin());
            ++res_.rounds;
            if (update(i, evaluate(i, states_))) {
                ++res_.iterations;
                for (const NodeId s : succ[i]) {
                    work.insert(position[s]);
                }
            }
        }
        res_.converged = true;
    }
};

template <class Ops>
void run_solver(const EquationSystem& sys, const HardwareSpec& spec, const SolveOptions& opts, SolveResult& res) {
    Solver<Ops>(sys, spec, opts, res).run();
}

void check_expr_literals(const Expr& e, const Bounds& bounds) {
    std::visit(Overloaded{
                   [&](const Const& c) {
                       if (!bounds.contains(c.value)) {
                           throw FrontendError(to_string(e.pos) + ": literal " + std::to_string(c.value) +
                                               " lies outside [" + std::to_string(bounds.lo) + "," +
                                               std::to_string(bounds.hi) + "]");
                       }
                   },
                   [&](const Var&) {},
                   [&](const Unary& u) {
                       const auto* c = std::get_if<Const>(&strip_parens(*u.operand).node);
                       if (u.op == UnaryOp::Neg && c != nullptr && c->value > 0 &&
                           bounds.contains(-c->value)) {
                           return;
                       }
                       check_expr_literals(*u.operand, bounds);
                   },
                   [&](const Binary& b) {
                       check_expr_literals(*b.lhs, bounds);
                       check_expr_literals(*b.rhs, bounds);
                   },
                   [&](const Assign& a) { check_expr_literals(*a.value, bounds); },
                   [&](const Paren& p) { check_expr_literals(*p.inner, bounds); },
               },
               e.node);
}

} // namespace

EquationSystem build_equations(const Cfg& cfg, std::vector<std::string> vars) {
    EquationSystem sys;
    sys.cfg = std::make_shared<const Cfg>(cfg);
    sys.vars = std::move(vars);
    for (const auto& n : cfg.nodes) {
        sys.equations.push_back(Equation{n.id, n.id == cfg.entry, cfg.in_edges(n.id)});
    }
    return sys;
}

EquationSystem build_equations(const Cfg& cfg) { return build_equations(cfg, cfg.variables); }

std::string_view to_string(Domain d) { return d == Domain::Concrete ? "concrete" : "abstract"; }

std::string_view to_string(Schedule s) {
    switch (s) {
    case Schedule::RoundRobin: return "round-robin";
    case Schedule::Jacobi: return "jacobi";
    case Schedule::Worklist: return "worklist";
    }
    return "?";
}

SolveResult solve(const EquationSystem& system, const HardwareSpec& spec, const SolveOptions& options) {
    if (options.max_iters < 1) {
        throw std::invalid_argument("max_iters must be at least 1");
    }
    if (options.widening && options.domain == Domain::Concrete) {
        throw std::invalid_argument("widening applies to the abstract domain only");
    }
    SolveResult res;
    res.domain = options.domain;
    res.schedule = options.schedule;
    res.widened = options.widening.has_value();
    if (options.domain == Domain::Concrete) {
        run_solver<ConcreteOps>(system, spec, options, res);
    } else {
        run_solver<AbstractOps>(system, spec, options, res);
    }
    return res;
}

void check_literals(const Stmt& program, const Bounds& bounds) {
    std::visit(Overloaded{
                   [&](const ExprStmt& s) { check_expr_literals(*s.expr, bounds); },
                   [&](const Block& b) {
                       for (const auto& s : b.body) {
                           check_literals(*s, bounds);
                       }
                   },
                   [&](const While& w) {
                       check_expr_literals(*w.cond, bounds);
                       check_literals(*w.body, bounds);
                   },
                   [&](const If& i) {
                       check_expr_literals(*i.cond, bounds);
                       check_literals(*i.then_branch, bounds);
                       if (i.else_branch) {
                           check_literals(*i.else_branch, bounds);
                       }
                   },
                   [&](const Function& f) { check_literals(*f.body, bounds); },
               },
               program.node);
}

SoundnessReport check_soundness(const SolveResult& concrete, const SolveResult& abstract) {
    if (concrete.domain != Domain::Concrete || abstract.domain != Domain::Abstract ||
        concrete.concrete.size() != abstract.abstract.size()) {
        throw std::invalid_argument("check_soundness needs a concrete and an abstract result over one CFG");
    }
    SoundnessReport report;
    for (std::size_t i = 0; i < concrete.concrete.size(); ++i) {
        const auto& c = concrete.concrete[i];
        const auto& a = abstract.abstract[i];
        if (c.is_bottom()) {
            continue;
        }
        for (const auto& [name, ce] : c.vars()) {
            const auto lifted = alpha(ce);
            const auto& ae = a.at(name);
            if (!leq(lifted, ae)) {
                report.violations.push_back(SoundnessViolation{i, name, lifted, ae});
            }
        }
    }
    return report;
}

} // namespace probint
