#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pylang/diag.hpp"

namespace pylang {

enum class TokenKind { Keyword, Identifier, Number, String, Operator, Punct, EndOfInput };

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::EndOfInput;
  std::string text;  // raw lexeme as it appears in the source
  // Decoded payload: integer or float for Number, unescaped text for String.
  std::variant<std::monostate, mpz_class, double, std::string> value;
  int line = 1;
  int column = 1;

  bool is(TokenKind k) const { return kind == k; }
  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  Span span() const { return Span{line, column}; }
};

// Converts source text into tokens. The final token is always EndOfInput.
// Throws LexError on unterminated string literals, bad escape sequences,
// comment markers (`#`, `//`, `/*`), and characters outside the alphabet.
std::vector<Token> tokenize(const std::string& source);

// One `LINE:COL KIND LEXEME` line per token; used by `check --tokens`.
std::string dump_tokens(const std::vector<Token>& tokens);

}  // namespace pylang
