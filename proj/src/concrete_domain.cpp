// SPDX-License-Identifier: Apache-2.0
#include "probint/concrete_domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "probint/eval.hpp"

namespace probint {

namespace {

// Calls `visit` once per tuple of the named variables' value sets.
void for_each_tuple(const ConcreteState& state, const std::set<std::string>& names, const OracleLimits& limits,
                    const std::function<void(const Env&)>& visit) {
    std::vector<const std::vector<std::int64_t>*> sets;
    Env env;
    double count = 1.0;
    for (const auto& n : names) {
        const auto& values = state.at(n).values;
        sets.push_back(&values);
        env.emplace_back(n, values.front());
        count *= static_cast<double>(values.size());
    }
    if (count > static_cast<double>(limits.max_tuples)) {
        std::ostringstream msg;
        msg << "concrete evaluation needs " << count << " tuples, above the limit of " << limits.max_tuples;
        throw OracleBlowup(msg.str());
    }
    std::vector<std::size_t> idx(sets.size(), 0);
    for (;;) {
        visit(env);
        std::size_t k = 0;
        for (; k < sets.size(); ++k) {
            if (++idx[k] < sets[k]->size()) {
                env[k].second = (*sets[k])[idx[k]];
                break;
            }
            idx[k] = 0;
            env[k].second = sets[k]->front();
        }
        if (k == sets.size()) {
            return;
        }
    }
}

void sort_unique(std::vector<std::int64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

ConcreteElement ConcreteElement::top(const Bounds& bounds) {
    ConcreteElement e;
    e.prob = 0.0;
    e.values.reserve(static_cast<std::size_t>(bounds.size()));
    for (std::int64_t v = bounds.lo;; ++v) {
        e.values.push_back(v);
        if (v == bounds.hi) {
            break;
        }
    }
    return e;
}

ConcreteElement ConcreteElement::of(std::vector<std::int64_t> values, double prob) {
    sort_unique(values);
    return {std::move(values), prob};
}

bool leq(const ConcreteElement& a, const ConcreteElement& b) {
    return std::includes(b.values.begin(), b.values.end(), a.values.begin(), a.values.end()) &&
           a.prob >= b.prob - kPmfTolerance;
}

ConcreteElement join(const ConcreteElement& a, const ConcreteElement& b) {
    ConcreteElement out;
    std::set_union(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(), std::back_inserter(out.values));
    out.prob = std::min(a.prob, b.prob);
    return out;
}

ConcreteElement meet(const ConcreteElement& a, const ConcreteElement& b) {
    ConcreteElement out;
    std::set_intersection(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(),
                          std::back_inserter(out.values));
    out.prob = std::max(a.prob, b.prob);
    return out;
}

std::string to_string(const ConcreteElement& e) {
    std::ostringstream os;
    os << '{';
    // Runs of consecutive integers print as lo..hi.
    for (std::size_t i = 0; i < e.values.size();) {
        std::size_t j = i;
        while (j + 1 < e.values.size() && e.values[j + 1] == e.values[j] + 1) {
            ++j;
        }
        os << (i == 0 ? "" : ",") << e.values[i];
        if (j > i + 1) {
            os << ".." << e.values[j];
        } else if (j == i + 1) {
            os << ',' << e.values[j];
        }
        i = j + 1;
    }
    os << '}';
    return os.str();
}

ConcreteState::ConcreteState(ConcreteVars vars) : vars_(std::move(vars)) { normalize(); }

ConcreteState ConcreteState::bottom(const std::vector<std::string>& vars) {
    ConcreteVars m;
    for (const auto& v : vars) {
        m.emplace(v, ConcreteElement::bottom());
    }
    return ConcreteState(std::move(m));
}

ConcreteState ConcreteState::entry(const std::vector<std::string>& vars, const Bounds& bounds) {
    auto full = ConcreteElement::top(bounds);
    full.prob = 1.0;
    ConcreteVars m;
    for (const auto& v : vars) {
        m.emplace(v, full);
    }
    return ConcreteState(std::move(m));
}

bool ConcreteState::is_bottom() const {
    return std::any_of(vars_.begin(), vars_.end(), [](const auto& kv) { return kv.second.is_bottom(); });
}

const ConcreteElement& ConcreteState::at(std::string_view name) const {
    const auto it = vars_.find(name);
    if (it == vars_.end()) {
        throw std::out_of_range("unknown variable '" + std::string(name) + "'");
    }
    return it->second;
}

void ConcreteState::set(const std::string& name, ConcreteElement e) {
    vars_[name] = std::move(e);
    normalize();
}

void ConcreteState::normalize() {
    if (is_bottom()) {
        for (auto& [_, e] : vars_) {
            e = ConcreteElement::bottom();
        }
    }
}

bool leq(const ConcreteState& a, const ConcreteState& b) {
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

ConcreteState join(const ConcreteState& a, const ConcreteState& b) {
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    ConcreteVars out;
    for (const auto& [name, e] : a.vars()) {
        out.emplace(name, join(e, b.at(name)));
    }
    return ConcreteState(std::move(out));
}

bool same_values(const ConcreteState& a, const ConcreteState& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return a.is_bottom() == b.is_bottom();
    }
    for (const auto& [name, e] : a.vars()) {
        if (e.values != b.at(name).values) {
            return false;
        }
    }
    return true;
}

double expression_factor(const Expr& e, const HardwareSpec& spec) {
    double f = std::pow(rel(spec, OpKind::Read), static_cast<double>(read_vars(e).size()));
    for (const OpKind op : op_occurrences(e)) {
        f *= rel(spec, op);
    }
    return f;
}

ConcreteState sp_assign(const ConcreteState& state, const std::string& target, const Expr& rhs,
                        const HardwareSpec& spec, Diagnostics* diags, const OracleLimits& limits) {
    if (state.is_bottom()) {
        return state;
    }
    const auto names = read_vars(rhs);
    std::vector<std::int64_t> results;
    for_each_tuple(state, names, limits, [&](const Env& env) {
        if (const auto v = evaluate(rhs, env, spec.bounds, diags)) {
            results.push_back(*v);
        }
    });

    double p = rel(spec, OpKind::Write) * expression_factor(rhs, spec);
    for (const auto& n : names) {
        p *= state.at(n).prob;
    }
    ConcreteState out = state;
    out.set(target, ConcreteElement::of(std::move(results), p));
    return out;
}

ConcreteState sp_guard(const ConcreteState& state, const Expr& guard, const HardwareSpec& spec, Diagnostics* diags,
                       const OracleLimits& limits) {
    if (state.is_bottom()) {
        return state;
    }
    const auto names = read_vars(guard);
    std::map<std::string, std::vector<std::int64_t>, std::less<>> projections;
    bool satisfiable = false;
    for_each_tuple(state, names, limits, [&](const Env& env) {
        const auto v = evaluate(guard, env, spec.bounds, diags);
        if (v && *v != 0) {
            satisfiable = true;
            for (const auto& [name, value] : env) {
                projections[name].push_back(value);
            }
        }
    });
    if (!satisfiable) {
        std::vector<std::string> all;
        for (const auto& [name, _] : state.vars()) {
            all.push_back(name);
        }
        return ConcreteState::bottom(all);
    }

    const double factor = expression_factor(guard, spec);
    ConcreteVars out;
    for (const auto& [name, e] : state.vars()) {
        const auto it = projections.find(name);
        out.emplace(name, it == projections.end() ? ConcreteElement{e.values, e.prob * factor}
                                                  : ConcreteElement::of(std::move(it->second), e.prob * factor));
    }
    return ConcreteState(std::move(out));
}

} // namespace probint
