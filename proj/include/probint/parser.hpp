// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "probint/ast.hpp"
#include "probint/lexer.hpp"

namespace probint {

// A whole program: either a single function wrapper or a statement list,
// which comes back as a Block. Trailing semicolons are optional.
StmtPtr parse_program(const std::vector<Token>& tokens);
StmtPtr parse_program(std::string_view source);

// A single expression spanning the whole token list.
ExprPtr parse_expression(const std::vector<Token>& tokens);
ExprPtr parse_expression(std::string_view source);

} // namespace probint
