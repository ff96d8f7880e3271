// SPDX-License-Identifier: Apache-2.0
#include "probint/parser.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace probint {

namespace {

struct BinaryLevel {
    std::vector<std::pair<std::string_view, BinaryOp>> ops;
};

const BinaryLevel kLevels[] = {
    {{{"||.", BinaryOp::Or}}},
    {{{"&&.", BinaryOp::And}}},
    {{{"==.", BinaryOp::Eq}, {"!=.", BinaryOp::Ne}}},
    {{{"<.", BinaryOp::Lt}, {"<=.", BinaryOp::Le}, {">.", BinaryOp::Gt}, {">=.", BinaryOp::Ge}}},
    {{{"+.", BinaryOp::Add}, {"-.", BinaryOp::Sub}}},
    {{{"*.", BinaryOp::Mul}, {"/.", BinaryOp::Div}, {"%.", BinaryOp::Mod}}},
};
constexpr std::size_t kLevelCount = std::size(kLevels);

std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) {
        return "end of input";
    }
    return "'" + t.text + "'";
}

class Parser {
  public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {
        if (toks_.empty() || toks_.back().kind != TokenKind::End) {
            throw ParseError({}, "token list must end with an end-of-input token");
        }
    }

    StmtPtr program() {
        if ((peek().is(TokenKind::Keyword, "void") || peek().is(TokenKind::Keyword, "int")) &&
            peek(1).kind == TokenKind::Identifier && peek(2).is(TokenKind::Punct, "(")) {
            auto fn = function();
            expect_end();
            return fn;
        }
        const SourcePos begin = peek().pos;
        std::vector<StmtPtr> body;
        while (peek().kind != TokenKind::End) {
            body.push_back(statement());
        }
        const SourcePos end = body.empty() ? begin : body.back()->end;
        return std::make_shared<const Stmt>(Stmt{Block{std::move(body)}, begin, end});
    }

    ExprPtr whole_expression() {
        auto e = expression();
        expect_end();
        return e;
    }

  private:
    const std::vector<Token>& toks_;
    std::size_t i_ = 0;

    [[nodiscard]] const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(i_ + k, toks_.size() - 1)];
    }
    const Token& take() {
        const Token& t = toks_[i_];
        if (i_ + 1 < toks_.size()) {
            ++i_;
        }
        return t;
    }
    [[nodiscard]] SourcePos last_pos() const { return toks_[i_ == 0 ? 0 : i_ - 1].pos; }

    bool accept(TokenKind kind, std::string_view text) {
        if (peek().is(kind, text)) {
            take();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(peek().pos, "expected " + expected + ", got " + describe(peek()));
    }

    void expect(TokenKind kind, std::string_view text) {
        if (!accept(kind, text)) {
            fail("'" + std::string(text) + "'");
        }
    }

    std::string expect_ident() {
        if (peek().kind != TokenKind::Identifier) {
            fail("identifier");
        }
        return take().text;
    }

    void expect_end() {
        if (peek().kind != TokenKind::End) {
            fail("end of input");
        }
    }

    StmtPtr function() {
        const SourcePos begin = take().pos;
        std::string name = expect_ident();
        expect(TokenKind::Punct, "(");
        std::vector<std::string> params;
        if (!peek().is(TokenKind::Punct, ")")) {
            do {
                expect(TokenKind::Keyword, "int");
                params.push_back(expect_ident());
            } while (accept(TokenKind::Punct, ","));
        }
        expect(TokenKind::Punct, ")");
        if (!peek().is(TokenKind::Punct, "{")) {
            fail("'{'");
        }
        auto body = statement();
        return std::make_shared<const Stmt>(Stmt{Function{std::move(name), std::move(params), body}, begin, body->end});
    }

    StmtPtr statement() {
        const Token& t = peek();
        const SourcePos begin = t.pos;
        if (t.is(TokenKind::Punct, "{")) {
            take();
            std::vector<StmtPtr> body;
            while (!peek().is(TokenKind::Punct, "}")) {
                if (peek().kind == TokenKind::End) {
                    fail("'}'");
                }
                body.push_back(statement());
            }
            take();
            return std::make_shared<const Stmt>(Stmt{Block{std::move(body)}, begin, last_pos()});
        }
        if (t.is(TokenKind::Punct, ";")) {
            take();
            return std::make_shared<const Stmt>(Stmt{Block{}, begin, begin});
        }
        if (t.is(TokenKind::Keyword, "while")) {
            take();
            auto cond = condition();
            auto body = statement();
            return std::make_shared<const Stmt>(Stmt{While{std::move(cond), body}, begin, body->end});
        }
        if (t.is(TokenKind::Keyword, "if")) {
            take();
            auto cond = condition();
            auto then_branch = statement();
            StmtPtr else_branch;
            if (accept(TokenKind::Keyword, "else")) {
                else_branch = statement();
            }
            const SourcePos end = else_branch ? else_branch->end : then_branch->end;
            return std::make_shared<const Stmt>(Stmt{If{std::move(cond), then_branch, else_branch}, begin, end});
        }
        if (t.kind == TokenKind::Keyword) {
            fail("statement");
        }
        auto e = expression();
        accept(TokenKind::Punct, ";");
        return std::make_shared<const Stmt>(Stmt{ExprStmt{std::move(e)}, begin, last_pos()});
    }

    ExprPtr condition() {
        expect(TokenKind::Punct, "(");
        const Token& start = peek();
        auto cond = expression();
        const auto& inner = strip_parens(*cond);
        const auto* bin = std::get_if<Binary>(&inner.node);
        const auto* un = std::get_if<Unary>(&inner.node);
        const bool boolean = (bin != nullptr && (is_comparison(bin->op) || is_logical(bin->op))) ||
                             (un != nullptr && un->op == UnaryOp::Not);
        if (!boolean) {
            throw ParseError(start.pos, "condition must be a comparison or logical expression");
        }
        expect(TokenKind::Punct, ")");
        return cond;
    }

    ExprPtr expression() {
        if (peek().kind == TokenKind::Identifier && peek(1).is(TokenKind::Operator, "=.")) {
            const Token& target = take();
            take();
            auto value = expression();
            return make_assign(target.text, std::move(value), target.pos);
        }
        return binary(0);
    }

    std::optional<BinaryOp> match_level(std::size_t level) const {
        const Token& t = peek();
        if (t.kind != TokenKind::Operator) {
            return std::nullopt;
        }
        for (const auto& [text, op] : kLevels[level].ops) {
            if (t.text == text) {
                return op;
            }
        }
        return std::nullopt;
    }

    ExprPtr binary(std::size_t level) {
        if (level == kLevelCount) {
            return unary();
        }
        auto lhs = binary(level + 1);
        while (const auto op = match_level(level)) {
            const SourcePos pos = take().pos;
            auto rhs = binary(level + 1);
            lhs = make_binary(*op, std::move(lhs), std::move(rhs), pos);
        }
        return lhs;
    }

    ExprPtr unary() {
        const Token& t = peek();
        if (t.kind == TokenKind::Operator) {
            std::optional<UnaryOp> op;
            if (t.text == "-.") {
                op = UnaryOp::Neg;
            } else if (t.text == "+.") {
                op = UnaryOp::Plus;
            } else if (t.text == "!.") {
                op = UnaryOp::Not;
            }
            if (op) {
                take();
                return make_unary(*op, unary(), t.pos);
            }
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Integer: take(); return make_const(t.value, t.pos);
        case TokenKind::Identifier: take(); return make_var(t.text, t.pos);
        case TokenKind::Punct:
            if (t.text == "(") {
                take();
                auto inner = expression();
                expect(TokenKind::Punct, ")");
                return make_paren(std::move(inner), t.pos);
            }
            break;
        default: break;
        }
        fail("expression");
    }
};

} // namespace

StmtPtr parse_program(const std::vector<Token>& tokens) { return Parser(tokens).program(); }
StmtPtr parse_program(std::string_view source) { return parse_program(tokenize(source)); }

ExprPtr parse_expression(const std::vector<Token>& tokens) { return Parser(tokens).whole_expression(); }
ExprPtr parse_expression(std::string_view source) { return parse_expression(tokenize(source)); }

} // namespace probint
