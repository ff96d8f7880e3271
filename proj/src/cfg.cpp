// SPDX-License-Identifier: Apache-2.0
#include "probint/cfg.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <set>

namespace probint {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

BinaryOp complement(BinaryOp op) {
    switch (op) {
    case BinaryOp::Lt: return BinaryOp::Ge;
    case BinaryOp::Le: return BinaryOp::Gt;
    case BinaryOp::Gt: return BinaryOp::Le;
    case BinaryOp::Ge: return BinaryOp::Lt;
    case BinaryOp::Eq: return BinaryOp::Ne;
    case BinaryOp::Ne: return BinaryOp::Eq;
    default: return op;
    }
}

const Binary& require_comparison(const ExprPtr& guard) {
    const auto* bin = std::get_if<Binary>(&strip_parens(*guard).node);
    if (bin == nullptr || !is_comparison(bin->op)) {
        throw UnsupportedGuard("only single comparisons can be negated: " + to_source(*guard));
    }
    return *bin;
}

class Builder {
  public:
    Cfg run(const Stmt& program) {
        std::vector<StmtPtr> body;
        int end_line = program.begin.line;
        if (const auto* fn = std::get_if<Function>(&program.node)) {
            for (const auto& p : fn->params) {
                vars_.insert(p);
            }
            body = flatten(fn->body);
            if (!body.empty()) {
                end_line = body.back()->end.line;
            }
        } else {
            body = flatten(std::make_shared<const Stmt>(program));
            end_line = program.end.line;
        }

        cfg_.entry = new_node(program.begin.line);
        if (!body.empty()) {
            sequence(body, cfg_.entry, std::nullopt, end_line);
        }
        cfg_.variables.assign(vars_.begin(), vars_.end());
        return std::move(cfg_);
    }

  private:
    Cfg cfg_;
    std::set<std::string> vars_;

    static std::vector<StmtPtr> flatten(const StmtPtr& s) {
        if (const auto* b = std::get_if<Block>(&s->node)) {
            return b->body;
        }
        return {s};
    }

    NodeId new_node(int line) {
        const NodeId id = cfg_.nodes.size();
        cfg_.nodes.push_back(CfgNode{id, line});
        return id;
    }

    void add_edge(NodeId from, NodeId to, EdgeLabel label) {
        std::visit(Overloaded{
                       [&](const AssignLabel& a) {
                           vars_.insert(a.target);
                           for (auto& v : read_vars(*a.value)) {
                               vars_.insert(v);
                           }
                       },
                       [&](const GuardLabel& g) {
                           for (auto& v : read_vars(*g.cond)) {
                               vars_.insert(v);
                           }
                       },
                       [](const SkipLabel&) {},
                   },
                   label);
        cfg_.edges.push_back(CfgEdge{from, to, std::move(label)});
    }

    static int first_line(const Stmt& s, const std::vector<StmtPtr>& body) {
        return body.empty() ? s.begin.line : body.front()->begin.line;
    }

    NodeId target_or_new(std::optional<NodeId> to, int line) { return to ? *to : new_node(line); }

    // Returns the node where control rests after the list; `to` forces it.
    NodeId sequence(const std::vector<StmtPtr>& list, NodeId from, std::optional<NodeId> to, int exit_line) {
        if (list.empty()) {
            if (to) {
                add_edge(from, *to, SkipLabel{});
                return *to;
            }
            return from;
        }
        NodeId cur = from;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const bool last = i + 1 == list.size();
            cur = statement(*list[i], cur, last ? to : std::nullopt, last ? exit_line : list[i + 1]->begin.line);
        }
        return cur;
    }

    NodeId statement(const Stmt& s, NodeId from, std::optional<NodeId> to, int exit_line) {
        return std::visit(Overloaded{
                              [&](const ExprStmt& es) { return expression(*es.expr, from, to, exit_line, s.begin.line); },
                              [&](const Block& b) { return sequence(b.body, from, to, exit_line); },
                              [&](const While& w) {
                                  const NodeId head = from;
                                  const auto body = flatten(w.body);
                                  const NodeId body_entry = new_node(first_line(*w.body, body));
                                  add_edge(head, body_entry, GuardLabel{normalize_guard(w.cond)});
                                  const auto exit_label = GuardLabel{negate_guard(w.cond)};
                                  sequence(body, body_entry, head, exit_line);
                                  const NodeId exit = target_or_new(to, exit_line);
                                  add_edge(head, exit, exit_label);
                                  return exit;
                              },
                              [&](const If& i) {
                                  const auto then_body = flatten(i.then_branch);
                                  const auto true_label = GuardLabel{normalize_guard(i.cond)};
                                  const auto false_label = GuardLabel{negate_guard(i.cond)};
                                  const NodeId then_node = new_node(first_line(*i.then_branch, then_body));
                                  std::optional<NodeId> else_node;
                                  if (i.else_branch) {
                                      else_node = new_node(first_line(*i.else_branch, flatten(i.else_branch)));
                                  }
                                  const NodeId join = target_or_new(to, exit_line);
                                  add_edge(from, then_node, true_label);
                                  sequence(then_body, then_node, join, exit_line);
                                  if (else_node) {
                                      add_edge(from, *else_node, false_label);
                                      sequence(flatten(i.else_branch), *else_node, join, exit_line);
                                  } else {
                                      add_edge(from, join, false_label);
                                  }
                                  return join;
                              },
                              [&](const Function&) -> NodeId {
                                  throw FrontendError("nested function definitions are not supported");
                              },
                          },
                          s.node);
    }

    NodeId expression(const Expr& e0, NodeId from, std::optional<NodeId> to, int exit_line, int line) {
        const Expr& e = strip_parens(e0);
        const auto* assign = std::get_if<Assign>(&e.node);
        if (assign == nullptr) {
            if (contains_assign(e)) {
                throw FrontendError("assignment nested inside an expression: " + to_source(e0));
            }
            const NodeId next = target_or_new(to, exit_line);
            add_edge(from, next, SkipLabel{});
            return next;
        }
        // x =. (y =. e) becomes y =. e followed by x =. y.
        std::vector<AssignLabel> chain;
        const Assign* cur = assign;
        for (;;) {
            const Expr& value = strip_parens(*cur->value);
            if (const auto* inner = std::get_if<Assign>(&value.node)) {
                chain.push_back(AssignLabel{cur->target, make_var(inner->target)});
                cur = inner;
                continue;
            }
            if (contains_assign(value)) {
                throw FrontendError("assignment nested inside an expression: " + to_source(e0));
            }
            chain.push_back(AssignLabel{cur->target, cur->value});
            break;
        }
        std::reverse(chain.begin(), chain.end());
        NodeId at = from;
        for (std::size_t k = 0; k < chain.size(); ++k) {
            const bool last = k + 1 == chain.size();
            const NodeId next = last ? target_or_new(to, exit_line) : new_node(line);
            add_edge(at, next, chain[k]);
            at = next;
        }
        return at;
    }
};

} // namespace

std::string to_string(const EdgeLabel& label) {
    return std::visit(Overloaded{
                          [](const AssignLabel& a) { return a.target + " =. " + to_source(*a.value); },
                          [](const GuardLabel& g) { return "[" + to_source(*g.cond) + "]"; },
                          [](const SkipLabel&) { return std::string("skip"); },
                      },
                      label);
}

std::vector<std::size_t> Cfg::in_edges(NodeId n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].to == n) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> Cfg::out_edges(NodeId n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].from == n) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<NodeId> Cfg::exits() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes) {
        if (out_edges(n.id).empty()) {
            out.push_back(n.id);
        }
    }
    return out;
}

namespace {

struct DfsResult {
    std::vector<NodeId> postorder;
    std::vector<bool> loop_head;
};

DfsResult dfs(const Cfg& cfg) {
    DfsResult r;
    r.loop_head.assign(cfg.nodes.size(), false);
    if (cfg.nodes.empty()) {
        return r;
    }
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(cfg.nodes.size(), Mark::White);
    std::vector<std::vector<NodeId>> succ(cfg.nodes.size());
    for (const auto& e : cfg.edges) {
        succ[e.from].push_back(e.to);
    }
    // Explicit stack of (node, next successor index).
    std::vector<std::pair<NodeId, std::size_t>> stack;
    stack.emplace_back(cfg.entry, 0);
    mark[cfg.entry] = Mark::Grey;
    while (!stack.empty()) {
        auto& [n, k] = stack.back();
        if (k < succ[n].size()) {
            const NodeId m = succ[n][k++];
            if (mark[m] == Mark::White) {
                mark[m] = Mark::Grey;
                stack.emplace_back(m, 0);
            } else if (mark[m] == Mark::Grey) {
                r.loop_head[m] = true;
            }
        } else {
            mark[n] = Mark::Black;
            r.postorder.push_back(n);
            stack.pop_back();
        }
    }
    return r;
}

} // namespace

std::vector<NodeId> Cfg::reverse_postorder() const {
    auto order = dfs(*this).postorder;
    std::reverse(order.begin(), order.end());
    return order;
}

std::vector<bool> Cfg::loop_heads() const { return dfs(*this).loop_head; }

Cfg build_cfg(const Stmt& program) { return Builder{}.run(program); }

ExprPtr normalize_guard(const ExprPtr& guard) {
    const Expr& e = strip_parens(*guard);
    const auto* bin = std::get_if<Binary>(&e.node);
    if (bin == nullptr) {
        return guard;
    }
    const auto* lit = std::get_if<Const>(&strip_parens(*bin->rhs).node);
    if (lit == nullptr) {
        return guard;
    }
    if (bin->op == BinaryOp::Lt && lit->value != INT64_MIN) {
        return make_binary(BinaryOp::Le, bin->lhs, make_const(lit->value - 1, bin->rhs->pos), e.pos);
    }
    if (bin->op == BinaryOp::Gt && lit->value != INT64_MAX) {
        return make_binary(BinaryOp::Ge, bin->lhs, make_const(lit->value + 1, bin->rhs->pos), e.pos);
    }
    return guard;
}

ExprPtr negate_guard(const ExprPtr& guard) {
    const Binary& bin = require_comparison(guard);
    return normalize_guard(make_binary(complement(bin.op), bin.lhs, bin.rhs, strip_parens(*guard).pos));
}

} // namespace probint
