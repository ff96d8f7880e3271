// SPDX-License-Identifier: Apache-2.0
#include "probint/abstract_domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "probint/eval.hpp"

namespace probint {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

__extension__ using Wide = __int128;

std::int64_t saturate(Wide v) {
    return static_cast<std::int64_t>(std::clamp<Wide>(v, INT64_MIN, INT64_MAX));
}

BinaryOp mirror(BinaryOp op) {
    switch (op) {
    case BinaryOp::Lt: return BinaryOp::Gt;
    case BinaryOp::Le: return BinaryOp::Ge;
    case BinaryOp::Gt: return BinaryOp::Lt;
    case BinaryOp::Ge: return BinaryOp::Le;
    default: return op;
    }
}

Interval restrict(const Interval& i, BinaryOp op, std::int64_t c) {
    switch (op) {
    case BinaryOp::Le: return i.intersect({INT64_MIN, c});
    case BinaryOp::Lt: return i.intersect({INT64_MIN, saturate(static_cast<Wide>(c) - 1)});
    case BinaryOp::Ge: return i.intersect({c, INT64_MAX});
    case BinaryOp::Gt: return i.intersect({saturate(static_cast<Wide>(c) + 1), INT64_MAX});
    case BinaryOp::Eq: return i.intersect(Interval::singleton(c));
    case BinaryOp::Ne:
        if (i.is_singleton() && i.lo() == c) {
            return Interval::empty();
        }
        if (i.lo() == c) {
            return {c + 1, i.hi()};
        }
        if (i.hi() == c) {
            return {i.lo(), c - 1};
        }
        return i;
    default: return i;
    }
}

// Smallest (or largest) member of i satisfying pred; pred depends only on the
// residue modulo k on each side of zero.
std::optional<std::int64_t> scan(const Interval& i, std::int64_t k, bool from_low,
                                 const std::function<bool(std::int64_t)>& pred) {
    const auto run = [&](std::int64_t start) -> std::optional<std::int64_t> {
        for (std::int64_t n = 0; n < k; ++n) {
            const Wide v = from_low ? static_cast<Wide>(start) + n : static_cast<Wide>(start) - n;
            if (v < i.lo() || v > i.hi()) {
                break;
            }
            if (pred(static_cast<std::int64_t>(v))) {
                return static_cast<std::int64_t>(v);
            }
        }
        return std::nullopt;
    };
    if (auto v = run(from_low ? i.lo() : i.hi())) {
        return v;
    }
    if (i.lo() < 0 && i.hi() >= 0) {
        return run(from_low ? 0 : -1);
    }
    return std::nullopt;
}

Interval restrict_congruence(const Interval& i, std::int64_t k, BinaryOp op, std::int64_t c) {
    const std::int64_t modulus = k < 0 ? saturate(-static_cast<Wide>(k)) : k;
    const auto pred = [&](std::int64_t v) { return ((v % modulus) == c) == (op == BinaryOp::Eq); };
    const auto lo = scan(i, modulus, true, pred);
    if (!lo) {
        return Interval::empty();
    }
    const auto hi = scan(i, modulus, false, pred);
    return {*lo, *hi};
}

std::optional<GuardRefinement> refine_side(const Expr& var_side, const Expr& const_side, BinaryOp op,
                                           const IntervalEnv& env, const Bounds& bounds) {
    const auto c = fold_constant(const_side, bounds);
    if (!c) {
        return std::nullopt;
    }
    const Expr& vs = strip_parens(var_side);
    if (const auto* v = std::get_if<Var>(&vs.node)) {
        return GuardRefinement{v->name, restrict(env.at(v->name), op, *c)};
    }
    const auto* mod = std::get_if<Binary>(&vs.node);
    if (mod == nullptr || mod->op != BinaryOp::Mod || (op != BinaryOp::Eq && op != BinaryOp::Ne)) {
        return std::nullopt;
    }
    const auto* v = std::get_if<Var>(&strip_parens(*mod->lhs).node);
    const auto k = fold_constant(*mod->rhs, bounds);
    if (v == nullptr || !k || *k == 0) {
        return std::nullopt;
    }
    return GuardRefinement{v->name, restrict_congruence(env.at(v->name), *k, op, *c)};
}

std::vector<std::string> names_of(const AbstractVars& vars) {
    std::vector<std::string> out;
    for (const auto& [name, _] : vars) {
        out.push_back(name);
    }
    return out;
}

void collect_literals(const Expr& e, std::vector<std::int64_t>& out) {
    std::visit(Overloaded{
                   [&](const Const& c) { out.push_back(c.value); },
                   [&](const Var&) {},
                   [&](const Unary& u) {
                       const auto* c = std::get_if<Const>(&strip_parens(*u.operand).node);
                       if (u.op == UnaryOp::Neg && c != nullptr) {
                           out.push_back(saturate(-static_cast<Wide>(c->value)));
                       } else {
                           collect_literals(*u.operand, out);
                       }
                   },
                   [&](const Binary& b) {
                       collect_literals(*b.lhs, out);
                       collect_literals(*b.rhs, out);
                   },
                   [&](const Assign& a) { collect_literals(*a.value, out); },
                   [&](const Paren& p) { collect_literals(*p.inner, out); },
               },
               e.node);
}

} // namespace

double pmf(const AbstractElement& e) {
    if (e.is_bottom()) {
        return e.prob;
    }
    return e.prob / e.interval.width();
}

bool leq(const AbstractElement& a, const AbstractElement& b) {
    if (a.is_bottom()) {
        return true;
    }
    if (b.is_bottom()) {
        return false;
    }
    return a.interval.subset_of(b.interval) && pmf(a) >= pmf(b) - kPmfTolerance;
}

bool equivalent(const AbstractElement& a, const AbstractElement& b) { return leq(a, b) && leq(b, a); }

AbstractElement join(const AbstractElement& a, const AbstractElement& b) {
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    const Interval hull = a.interval.hull(b.interval);
    const double w = hull.width();
    const double mass = std::min({pmf(a), pmf(b), 1.0 / w});
    return {hull, std::min(1.0, w * mass)};
}

AbstractElement meet(const AbstractElement& a, const AbstractElement& b, Diagnostics* diags) {
    if (a.is_bottom() || b.is_bottom()) {
        return AbstractElement::bottom();
    }
    const Interval inter = a.interval.intersect(b.interval);
    if (inter.is_empty()) {
        return AbstractElement::bottom();
    }
    const double p = inter.width() * std::max(pmf(a), pmf(b));
    if (p > 1.0 + kPmfTolerance) {
        warn(diags, "meet probability " + std::to_string(p) + " clamped to 1");
    }
    return {inter, std::min(1.0, p)};
}

AbstractElement alpha(const ConcreteElement& c) {
    if (c.is_bottom()) {
        return AbstractElement::bottom();
    }
    const Interval hull{c.values.front(), c.values.back()};
    return {hull, std::min(1.0, c.prob * hull.width())};
}

ConcreteElement gamma(const AbstractElement& m) {
    if (m.is_bottom()) {
        return ConcreteElement::bottom();
    }
    ConcreteElement out;
    out.prob = pmf(m);
    out.values.reserve(static_cast<std::size_t>(m.interval.width()));
    for (std::int64_t v = m.interval.lo();; ++v) {
        out.values.push_back(v);
        if (v == m.interval.hi()) {
            break;
        }
    }
    return out;
}

std::string to_string(const AbstractElement& e) {
    std::ostringstream os;
    os.precision(12);
    os << "<" << to_string(e.interval) << ", " << e.prob << ">";
    return os.str();
}

ThresholdSet::ThresholdSet(std::vector<std::int64_t> values, const Bounds& bounds) : values_(std::move(values)) {
    std::erase_if(values_, [&](std::int64_t v) { return !bounds.contains(v); });
    values_.push_back(bounds.lo);
    values_.push_back(bounds.hi);
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

std::int64_t ThresholdSet::below(std::int64_t v) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), v);
    if (it == values_.begin()) {
        throw std::out_of_range("value below every threshold");
    }
    return *std::prev(it);
}

std::int64_t ThresholdSet::above(std::int64_t v) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end()) {
        throw std::out_of_range("value above every threshold");
    }
    return *it;
}

ThresholdSet thresholds_from_cfg(const Cfg& cfg, const Bounds& bounds) {
    std::vector<std::int64_t> lits;
    for (const auto& e : cfg.edges) {
        std::visit(Overloaded{
                       [&](const AssignLabel& a) { collect_literals(*a.value, lits); },
                       [&](const GuardLabel& g) { collect_literals(*g.cond, lits); },
                       [](const SkipLabel&) {},
                   },
                   e.label);
    }
    return ThresholdSet(std::move(lits), bounds);
}

ThresholdSet thresholds_from_program(const Stmt& program, const HardwareSpec& spec) {
    return thresholds_from_cfg(build_cfg(program), spec.bounds);
}

AbstractElement widen_threshold(const AbstractElement& old_e, const AbstractElement& new_e, const ThresholdSet& t) {
    if (new_e.is_bottom()) {
        return old_e;
    }
    if (old_e.is_bottom()) {
        return new_e;
    }
    if (leq(new_e, old_e)) {
        return old_e;
    }
    const Interval reach = old_e.interval.hull(new_e.interval);
    const Interval snapped{t.below(reach.lo()), t.above(reach.hi())};
    const double w = snapped.width();
    const double mass = std::min(std::max(pmf(old_e), pmf(new_e)), 1.0 / w);
    return {snapped, std::min(1.0, w * mass)};
}

AbstractState::AbstractState(AbstractVars vars) : vars_(std::move(vars)) { normalize(); }

AbstractState AbstractState::bottom(const std::vector<std::string>& vars) {
    AbstractVars m;
    for (const auto& v : vars) {
        m.emplace(v, AbstractElement::bottom());
    }
    return AbstractState(std::move(m));
}

AbstractState AbstractState::entry(const std::vector<std::string>& vars, const Bounds& bounds) {
    AbstractVars m;
    for (const auto& v : vars) {
        m.emplace(v, AbstractElement{Interval::full(bounds), 1.0});
    }
    return AbstractState(std::move(m));
}

bool AbstractState::is_bottom() const {
    return std::any_of(vars_.begin(), vars_.end(), [](const auto& kv) { return kv.second.is_bottom(); });
}

const AbstractElement& AbstractState::at(std::string_view name) const {
    const auto it = vars_.find(name);
    if (it == vars_.end()) {
        throw std::out_of_range("unknown variable '" + std::string(name) + "'");
    }
    return it->second;
}

void AbstractState::set(const std::string& name, AbstractElement e) {
    vars_[name] = e;
    normalize();
}

IntervalEnv AbstractState::intervals() const {
    IntervalEnv env;
    for (const auto& [name, e] : vars_) {
        env.emplace(name, e.interval);
    }
    return env;
}

void AbstractState::normalize() {
    if (is_bottom()) {
        for (auto& [_, e] : vars_) {
            e = AbstractElement::bottom();
        }
    }
}

bool leq(const AbstractState& a, const AbstractState& b) {
    if (a.is_bottom()) {
        return true;
    }
    if (b.is_bottom()) {
        return false;
    }
    for (const auto& [name, e] : a.vars()) {
        if (!leq(e, b.at(name))) {
            return false;
        }
    }
    return true;
}

AbstractState join(const AbstractState& a, const AbstractState& b) {
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    AbstractVars out;
    for (const auto& [name, e] : a.vars()) {
        out.emplace(name, join(e, b.at(name)));
    }
    return AbstractState(std::move(out));
}

AbstractState widen_threshold(const AbstractState& old_s, const AbstractState& new_s, const ThresholdSet& t) {
    if (new_s.is_bottom()) {
        return old_s;
    }
    if (old_s.is_bottom()) {
        return new_s;
    }
    AbstractVars out;
    for (const auto& [name, e] : old_s.vars()) {
        out.emplace(name, widen_threshold(e, new_s.at(name), t));
    }
    return AbstractState(std::move(out));
}

bool same_intervals(const AbstractState& a, const AbstractState& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return a.is_bottom() == b.is_bottom();
    }
    for (const auto& [name, e] : a.vars()) {
        if (!(e.interval == b.at(name).interval)) {
            return false;
        }
    }
    return true;
}

AbstractState alpha(const ConcreteState& c) {
    AbstractVars out;
    for (const auto& [name, e] : c.vars()) {
        out.emplace(name, alpha(e));
    }
    return AbstractState(std::move(out));
}

ConcreteState gamma(const AbstractState& m) {
    ConcreteVars out;
    for (const auto& [name, e] : m.vars()) {
        out.emplace(name, gamma(e));
    }
    return ConcreteState(std::move(out));
}

AbstractState sp_assign(const AbstractState& state, const std::string& target, const Expr& rhs,
                        const HardwareSpec& spec, Diagnostics* diags) {
    if (state.is_bottom()) {
        return state;
    }
    const Interval result = interval_eval(rhs, state.intervals(), spec.bounds, diags);
    const double factor = rel(spec, OpKind::Write) * expression_factor(rhs, spec);
    double literal = factor;
    double mass = factor;
    for (const auto& name : read_vars(rhs)) {
        literal *= state.at(name).prob;
        mass *= pmf(state.at(name));
    }
    // Capped by the mass each value of the image can carry.
    const double p = std::min({1.0, literal, result.width() * mass});
    AbstractState out = state;
    out.set(target, AbstractElement{result, result.is_empty() ? 1.0 : p});
    return out;
}

std::optional<GuardRefinement> refine_guard(const Expr& guard, const IntervalEnv& env, const Bounds& bounds) {
    const auto* bin = std::get_if<Binary>(&strip_parens(guard).node);
    if (bin == nullptr || !is_comparison(bin->op)) {
        return std::nullopt;
    }
    if (auto r = refine_side(*bin->lhs, *bin->rhs, bin->op, env, bounds)) {
        return r;
    }
    return refine_side(*bin->rhs, *bin->lhs, mirror(bin->op), env, bounds);
}

AbstractState sp_guard(const AbstractState& state, const Expr& guard, const HardwareSpec& spec, Diagnostics* diags) {
    if (state.is_bottom()) {
        return state;
    }
    const auto env = state.intervals();
    const Interval outcome = interval_eval(guard, env, spec.bounds, diags);
    const auto refinement = refine_guard(guard, env, spec.bounds);
    if ((outcome.lo() == 0 && outcome.hi() == 0) || (refinement && refinement->interval.is_empty())) {
        return AbstractState::bottom(names_of(state.vars()));
    }

    const double factor = expression_factor(guard, spec);
    AbstractVars out;
    for (const auto& [name, e] : state.vars()) {
        if (refinement && refinement->var == name) {
            const double shrink = refinement->interval.width() / e.interval.width();
            out.emplace(name, AbstractElement{refinement->interval, e.prob * shrink * factor});
        } else {
            out.emplace(name, AbstractElement{e.interval, e.prob * factor});
        }
    }
    return AbstractState(std::move(out));
}

} // namespace probint
