// SPDX-License-Identifier: Apache-2.0
#include "probint/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace probint {

namespace {

constexpr std::array<std::string_view, 5> kKeywords = {"while", "if", "else", "int", "void"};

// Longest spellings first so that "<=." wins over "<.".
constexpr std::array<std::string_view, 15> kOperators = {
    "<=.", ">=.", "==.", "!=.", "&&.", "||.", "=.", "+.", "-.", "*.", "/.", "%.", "<.", ">.", "!.",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            if (at_end()) {
                out.push_back(Token{TokenKind::End, "", here(), 0});
                return out;
            }
            out.push_back(next());
        }
    }

  private:
    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;

    [[nodiscard]] bool at_end() const { return i_ >= src_.size(); }
    [[nodiscard]] SourcePos here() const { return {line_, col_}; }
    [[nodiscard]] char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

    void advance(std::size_t n = 1) {
        for (std::size_t k = 0; k < n && !at_end(); ++k) {
            if (src_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }
    }

    void skip_blank() {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    Token next() {
        const SourcePos pos = here();
        const char c = peek();

        if (is_ident_start(c)) {
            const std::size_t start = i_;
            while (!at_end() && is_ident_char(peek())) {
                advance();
            }
            std::string text(src_.substr(start, i_ - start));
            for (const auto kw : kKeywords) {
                if (kw == text) {
                    return Token{TokenKind::Keyword, std::move(text), pos, 0};
                }
            }
            return Token{TokenKind::Identifier, std::move(text), pos, 0};
        }

        if (is_digit(c)) {
            const std::size_t start = i_;
            while (!at_end() && is_digit(peek())) {
                advance();
            }
            if (is_ident_char(peek())) {
                throw LexError(here(), "malformed integer literal");
            }
            const auto digits = src_.substr(start, i_ - start);
            std::int64_t value = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
                throw LexError(pos, "integer literal '" + std::string(digits) + "' does not fit in 64 bits");
            }
            return Token{TokenKind::Integer, std::string(digits), pos, value};
        }

        if (c == '(' || c == ')' || c == '{' || c == '}' || c == ';' || c == ',') {
            advance();
            return Token{TokenKind::Punct, std::string(1, c), pos, 0};
        }

        for (const auto op : kOperators) {
            if (src_.substr(i_, op.size()) == op) {
                advance(op.size());
                return Token{TokenKind::Operator, std::string(op), pos, 0};
            }
        }

        if (std::string_view("=+-*/%<>!&|").find(c) != std::string_view::npos) {
            throw LexError(pos, std::string("malformed operator at '") + c +
                                    "' (unreliable operators end with '.')");
        }
        if ((static_cast<unsigned char>(c) & 0x80U) != 0) {
            throw LexError(pos, "unexpected non-ASCII character");
        }
        throw LexError(pos, std::string("unexpected character '") + c + "'");
    }
};

} // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::Operator: return "operator";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Punct: return "punctuation";
    case TokenKind::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

} // namespace probint
