// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "probint/diagnostics.hpp"
#include "probint/hardware_spec.hpp"

namespace probint {

enum class UnaryOp { Neg, Plus, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

OpKind op_kind(UnaryOp op);
OpKind op_kind(BinaryOp op);
std::string_view spelling(UnaryOp op);
std::string_view spelling(BinaryOp op);
bool is_comparison(BinaryOp op);
bool is_logical(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Const {
    std::int64_t value;
};
struct Var {
    std::string name;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Assign {
    std::string target;
    ExprPtr value;
};
struct Paren {
    ExprPtr inner;
};

struct Expr {
    std::variant<Const, Var, Unary, Binary, Assign, Paren> node;
    SourcePos pos;
};

ExprPtr make_const(std::int64_t v, SourcePos pos = {});
ExprPtr make_var(std::string name, SourcePos pos = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourcePos pos = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_assign(std::string target, ExprPtr value, SourcePos pos = {});
ExprPtr make_paren(ExprPtr inner, SourcePos pos = {});

// Structural equality; ignores positions and, when `see_parens` is false,
// explicit parenthesis nodes.
bool same_expr(const Expr& a, const Expr& b, bool see_parens = false);

// Drops any number of enclosing Paren nodes.
const Expr& strip_parens(const Expr& e);

// Distinct variable names read by an expression (assignment targets excluded).
std::set<std::string> read_vars(const Expr& e);

// One entry per operator occurrence, in evaluation order.
std::vector<OpKind> op_occurrences(const Expr& e);

bool contains_assign(const Expr& e);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct ExprStmt {
    ExprPtr expr;
};
struct Block {
    std::vector<StmtPtr> body;
};
struct While {
    ExprPtr cond;
    StmtPtr body;
};
struct If {
    ExprPtr cond;
    StmtPtr then_branch;
    StmtPtr else_branch; // may be null
};
struct Function {
    std::string name;
    std::vector<std::string> params;
    StmtPtr body;
};

struct Stmt {
    std::variant<ExprStmt, Block, While, If, Function> node;
    SourcePos begin;
    // Position of the last token belonging to the statement.
    SourcePos end;
};

bool same_stmt(const Stmt& a, const Stmt& b, bool see_parens = false);

// Source rendering using the ASCII operator spellings; re-parses to a
// structurally equal tree.
std::string to_source(const Expr& e);
std::string to_source(const Stmt& s, int indent = 0);
// Whole program as accepted by parse_program: a top-level statement list is
// printed without enclosing braces.
std::string program_source(const Stmt& program);

} // namespace probint
