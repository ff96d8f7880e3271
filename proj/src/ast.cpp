// SPDX-License-Identifier: Apache-2.0
#include "probint/ast.hpp"

#include <sstream>

namespace probint {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

enum Prec { kAssign = 1, kOr, kAnd, kEquality, kRelational, kAdditive, kMultiplicative, kUnary, kPrimary };

int precedence(BinaryOp op) {
    switch (op) {
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return kEquality;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return kRelational;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdditive;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return kMultiplicative;
    }
    return kPrimary;
}

int precedence(const Expr& e) {
    return std::visit(Overloaded{
                          [](const Binary& b) { return precedence(b.op); },
                          [](const Assign&) { return static_cast<int>(kAssign); },
                          [](const Unary&) { return static_cast<int>(kUnary); },
                          [](const auto&) { return static_cast<int>(kPrimary); },
                      },
                      e.node);
}

void emit(std::ostream& os, const Expr& e, int min_prec);

void emit_child(std::ostream& os, const Expr& e, int min_prec) {
    if (precedence(e) < min_prec) {
        os << '(';
        emit(os, e, 0);
        os << ')';
    } else {
        emit(os, e, min_prec);
    }
}

void emit(std::ostream& os, const Expr& e, int /*min_prec*/) {
    std::visit(Overloaded{
                   [&](const Const& c) {
                       if (c.value < 0) {
                           os << "-.";
                           // Avoids negating INT64_MIN.
                           os << (c.value == INT64_MIN ? std::string("9223372036854775808")
                                                       : std::to_string(-c.value));
                       } else {
                           os << c.value;
                       }
                   },
                   [&](const Var& v) { os << v.name; },
                   [&](const Unary& u) {
                       os << spelling(u.op);
                       emit_child(os, *u.operand, kUnary);
                   },
                   [&](const Binary& b) {
                       const int p = precedence(b.op);
                       emit_child(os, *b.lhs, p);
                       os << ' ' << spelling(b.op) << ' ';
                       emit_child(os, *b.rhs, p + 1);
                   },
                   [&](const Assign& a) {
                       os << a.target << " =. ";
                       emit_child(os, *a.value, kAssign);
                   },
                   [&](const Paren& p) {
                       os << '(';
                       emit(os, *p.inner, 0);
                       os << ')';
                   },
               },
               e.node);
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    std::visit(Overloaded{
                   [&](const Const&) {},
                   [&](const Var& v) { out.insert(v.name); },
                   [&](const Unary& u) { collect_vars(*u.operand, out); },
                   [&](const Binary& b) {
                       collect_vars(*b.lhs, out);
                       collect_vars(*b.rhs, out);
                   },
                   [&](const Assign& a) { collect_vars(*a.value, out); },
                   [&](const Paren& p) { collect_vars(*p.inner, out); },
               },
               e.node);
}

void collect_ops(const Expr& e, std::vector<OpKind>& out) {
    std::visit(Overloaded{
                   [&](const Const&) {},
                   [&](const Var&) {},
                   [&](const Unary& u) {
                       collect_ops(*u.operand, out);
                       out.push_back(op_kind(u.op));
                   },
                   [&](const Binary& b) {
                       collect_ops(*b.lhs, out);
                       collect_ops(*b.rhs, out);
                       out.push_back(op_kind(b.op));
                   },
                   [&](const Assign& a) {
                       collect_ops(*a.value, out);
                       out.push_back(OpKind::Write);
                   },
                   [&](const Paren& p) { collect_ops(*p.inner, out); },
               },
               e.node);
}

void indent_to(std::ostream& os, int indent) {
    for (int i = 0; i < indent; ++i) {
        os << "  ";
    }
}

void emit_stmt(std::ostream& os, const Stmt& s, int indent);

// Bodies of while/if are always rendered as blocks so that dangling-else
// never changes the parse.
void emit_body(std::ostream& os, const Stmt& s, int indent) {
    if (std::holds_alternative<Block>(s.node)) {
        emit_stmt(os, s, indent);
        return;
    }
    os << "{\n";
    indent_to(os, indent + 1);
    emit_stmt(os, s, indent + 1);
    os << '\n';
    indent_to(os, indent);
    os << '}';
}

void emit_stmt(std::ostream& os, const Stmt& s, int indent) {
    std::visit(Overloaded{
                   [&](const ExprStmt& es) {
                       emit(os, *es.expr, 0);
                       os << ';';
                   },
                   [&](const Block& b) {
                       os << "{\n";
                       for (const auto& child : b.body) {
                           indent_to(os, indent + 1);
                           emit_stmt(os, *child, indent + 1);
                           os << '\n';
                       }
                       indent_to(os, indent);
                       os << '}';
                   },
                   [&](const While& w) {
                       os << "while (";
                       emit(os, *w.cond, 0);
                       os << ") ";
                       emit_body(os, *w.body, indent);
                   },
                   [&](const If& i) {
                       os << "if (";
                       emit(os, *i.cond, 0);
                       os << ") ";
                       emit_body(os, *i.then_branch, indent);
                       if (i.else_branch) {
                           os << " else ";
                           emit_body(os, *i.else_branch, indent);
                       }
                   },
                   [&](const Function& f) {
                       os << "void " << f.name << '(';
                       for (std::size_t k = 0; k < f.params.size(); ++k) {
                           os << (k == 0 ? "" : ", ") << "int " << f.params[k];
                       }
                       os << ") ";
                       emit_body(os, *f.body, indent);
                   },
               },
               s.node);
}

} // namespace

OpKind op_kind(UnaryOp op) {
    switch (op) {
    case UnaryOp::Neg: return OpKind::Sub;
    case UnaryOp::Plus: return OpKind::Add;
    case UnaryOp::Not: return OpKind::Not;
    }
    return OpKind::Not;
}

OpKind op_kind(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return OpKind::Add;
    case BinaryOp::Sub: return OpKind::Sub;
    case BinaryOp::Mul: return OpKind::Mul;
    case BinaryOp::Div: return OpKind::Div;
    case BinaryOp::Mod: return OpKind::Mod;
    case BinaryOp::Lt: return OpKind::Lt;
    case BinaryOp::Le: return OpKind::Le;
    case BinaryOp::Gt: return OpKind::Gt;
    case BinaryOp::Ge: return OpKind::Ge;
    case BinaryOp::Eq: return OpKind::Eq;
    case BinaryOp::Ne: return OpKind::Ne;
    case BinaryOp::And: return OpKind::And;
    case BinaryOp::Or: return OpKind::Or;
    }
    return OpKind::Add;
}

std::string_view spelling(UnaryOp op) {
    switch (op) {
    case UnaryOp::Neg: return "-.";
    case UnaryOp::Plus: return "+.";
    case UnaryOp::Not: return "!.";
    }
    return "?";
}

std::string_view spelling(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+.";
    case BinaryOp::Sub: return "-.";
    case BinaryOp::Mul: return "*.";
    case BinaryOp::Div: return "/.";
    case BinaryOp::Mod: return "%.";
    case BinaryOp::Lt: return "<.";
    case BinaryOp::Le: return "<=.";
    case BinaryOp::Gt: return ">.";
    case BinaryOp::Ge: return ">=.";
    case BinaryOp::Eq: return "==.";
    case BinaryOp::Ne: return "!=.";
    case BinaryOp::And: return "&&.";
    case BinaryOp::Or: return "||.";
    }
    return "?";
}

bool is_comparison(BinaryOp op) {
    switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne: return true;
    default: return false;
    }
}

bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

ExprPtr make_const(std::int64_t v, SourcePos pos) { return std::make_shared<const Expr>(Expr{Const{v}, pos}); }
ExprPtr make_var(std::string name, SourcePos pos) {
    return std::make_shared<const Expr>(Expr{Var{std::move(name)}, pos});
}
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourcePos pos) {
    return std::make_shared<const Expr>(Expr{Unary{op, std::move(operand)}, pos});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, pos});
}
ExprPtr make_assign(std::string target, ExprPtr value, SourcePos pos) {
    return std::make_shared<const Expr>(Expr{Assign{std::move(target), std::move(value)}, pos});
}
ExprPtr make_paren(ExprPtr inner, SourcePos pos) {
    return std::make_shared<const Expr>(Expr{Paren{std::move(inner)}, pos});
}

const Expr& strip_parens(const Expr& e) {
    const Expr* cur = &e;
    while (const auto* p = std::get_if<Paren>(&cur->node)) {
        cur = p->inner.get();
    }
    return *cur;
}

bool same_expr(const Expr& a0, const Expr& b0, bool see_parens) {
    const Expr& a = see_parens ? a0 : strip_parens(a0);
    const Expr& b = see_parens ? b0 : strip_parens(b0);
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(Overloaded{
                          [&](const Const& x) { return x.value == std::get<Const>(b.node).value; },
                          [&](const Var& x) { return x.name == std::get<Var>(b.node).name; },
                          [&](const Unary& x) {
                              const auto& y = std::get<Unary>(b.node);
                              return x.op == y.op && same_expr(*x.operand, *y.operand, see_parens);
                          },
                          [&](const Binary& x) {
                              const auto& y = std::get<Binary>(b.node);
                              return x.op == y.op && same_expr(*x.lhs, *y.lhs, see_parens) &&
                                     same_expr(*x.rhs, *y.rhs, see_parens);
                          },
                          [&](const Assign& x) {
                              const auto& y = std::get<Assign>(b.node);
                              return x.target == y.target && same_expr(*x.value, *y.value, see_parens);
                          },
                          [&](const Paren& x) {
                              return same_expr(*x.inner, *std::get<Paren>(b.node).inner, see_parens);
                          },
                      },
                      a.node);
}

bool same_stmt(const Stmt& a, const Stmt& b, bool see_parens) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    const auto same_opt = [&](const StmtPtr& x, const StmtPtr& y) {
        if (!x || !y) {
            return !x && !y;
        }
        return same_stmt(*x, *y, see_parens);
    };
    return std::visit(Overloaded{
                          [&](const ExprStmt& x) {
                              return same_expr(*x.expr, *std::get<ExprStmt>(b.node).expr, see_parens);
                          },
                          [&](const Block& x) {
                              const auto& y = std::get<Block>(b.node);
                              if (x.body.size() != y.body.size()) {
                                  return false;
                              }
                              for (std::size_t i = 0; i < x.body.size(); ++i) {
                                  if (!same_stmt(*x.body[i], *y.body[i], see_parens)) {
                                      return false;
                                  }
                              }
                              return true;
                          },
                          [&](const While& x) {
                              const auto& y = std::get<While>(b.node);
                              return same_expr(*x.cond, *y.cond, see_parens) && same_opt(x.body, y.body);
                          },
                          [&](const If& x) {
                              const auto& y = std::get<If>(b.node);
                              return same_expr(*x.cond, *y.cond, see_parens) &&
                                     same_opt(x.then_branch, y.then_branch) &&
                                     same_opt(x.else_branch, y.else_branch);
                          },
                          [&](const Function& x) {
                              const auto& y = std::get<Function>(b.node);
                              return x.name == y.name && x.params == y.params && same_opt(x.body, y.body);
                          },
                      },
                      a.node);
}

std::set<std::string> read_vars(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

std::vector<OpKind> op_occurrences(const Expr& e) {
    std::vector<OpKind> out;
    collect_ops(e, out);
    return out;
}

bool contains_assign(const Expr& e) {
    return std::visit(Overloaded{
                          [](const Assign&) { return true; },
                          [](const Unary& u) { return contains_assign(*u.operand); },
                          [](const Binary& b) { return contains_assign(*b.lhs) || contains_assign(*b.rhs); },
                          [](const Paren& p) { return contains_assign(*p.inner); },
                          [](const auto&) { return false; },
                      },
                      e.node);
}

std::string to_source(const Expr& e) {
    std::ostringstream os;
    emit(os, e, 0);
    return os.str();
}

std::string to_source(const Stmt& s, int indent) {
    std::ostringstream os;
    emit_stmt(os, s, indent);
    return os.str();
}

std::string program_source(const Stmt& program) {
    const auto* block = std::get_if<Block>(&program.node);
    if (block == nullptr) {
        return to_source(program) + '\n';
    }
    std::ostringstream os;
    for (const auto& child : block->body) {
        emit_stmt(os, *child, 0);
        os << '\n';
    }
    return os.str();
}

} // namespace probint
