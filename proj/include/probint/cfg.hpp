// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "probint/ast.hpp"

namespace probint {

using NodeId = std::size_t;

struct AssignLabel {
    std::string target;
    ExprPtr value;
};
struct GuardLabel {
    ExprPtr cond;
};
// Control transfer without any computation (empty loop bodies, bare expressions).
struct SkipLabel {};

using EdgeLabel = std::variant<AssignLabel, GuardLabel, SkipLabel>;

std::string to_string(const EdgeLabel& label);

struct CfgEdge {
    NodeId from;
    NodeId to;
    EdgeLabel label;
};

struct CfgNode {
    NodeId id;
    int line;
};

struct Cfg {
    std::vector<CfgNode> nodes;
    std::vector<CfgEdge> edges;
    NodeId entry = 0;
    // Sorted; includes function parameters even when unused.
    std::vector<std::string> variables;

    [[nodiscard]] std::vector<std::size_t> in_edges(NodeId n) const;
    [[nodiscard]] std::vector<std::size_t> out_edges(NodeId n) const;
    [[nodiscard]] std::vector<NodeId> exits() const;
    [[nodiscard]] std::vector<NodeId> reverse_postorder() const;
    // Targets of DFS back edges from the entry.
    [[nodiscard]] std::vector<bool> loop_heads() const;
};

// Throws UnsupportedGuard for compound branch conditions and FrontendError for
// assignments nested inside expressions.
Cfg build_cfg(const Stmt& program);

// Rewrites `e <. c` to `e <=. c-1` and `e >. c` to `e >=. c+1` for a literal c.
ExprPtr normalize_guard(const ExprPtr& guard);

// Complement of a single comparison, normalized as above. Logical connectives
// and non-comparisons raise UnsupportedGuard.
ExprPtr negate_guard(const ExprPtr& guard);

} // namespace probint
