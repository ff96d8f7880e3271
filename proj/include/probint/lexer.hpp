// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "probint/diagnostics.hpp"

namespace probint {

enum class TokenKind { Identifier, Integer, Operator, Keyword, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    // Operators keep their trailing '.', e.g. "<=.".
    std::string text;
    SourcePos pos;
    std::int64_t value = 0;

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
};

std::string_view to_string(TokenKind kind);

// The returned list always ends with a single End token.
std::vector<Token> tokenize(std::string_view source);

} // namespace probint
