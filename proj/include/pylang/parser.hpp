#pragma once

#include <vector>

#include "pylang/ast.hpp"
#include "pylang/lexer.hpp"

namespace pylang {

// Recursive descent over the token stream. Precedence, lowest to highest:
// logical (&&, ||) < relational < additive < multiplicative < unary minus.
// Operators of the same level associate left. Throws ParseError; never
// returns a partial tree.
Program parse_program(const std::vector<Token>& tokens);

// Parses exactly one expression followed by EndOfInput.
Expr parse_expression(const std::vector<Token>& tokens);

}  // namespace pylang
