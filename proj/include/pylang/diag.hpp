#pragma once

#include <stdexcept>
#include <string>

namespace pylang {

// Source position, 1-based. line == 0 means "unknown".
struct Span {
  int line = 0;
  int column = 0;
};

struct LexError : std::runtime_error {
  Span span;
  LexError(const std::string& message, Span where)
      : std::runtime_error(message), span(where) {}
};

struct ParseError : std::runtime_error {
  Span span;
  std::string expected;
  std::string found;
  ParseError(const std::string& message, Span where, std::string expected_desc,
             std::string found_lexeme)
      : std::runtime_error(message),
        span(where),
        expected(std::move(expected_desc)),
        found(std::move(found_lexeme)) {}
};

enum class RuntimeErrorKind {
  TypeError,
  UndefinedName,
  UndefinedFunction,
  DivisionByZero,
  ArityMismatch,
  StepBudgetExceeded,
  RecursionLimit,
};

const char* to_string(RuntimeErrorKind kind);

struct RuntimeError : std::runtime_error {
  RuntimeErrorKind kind;
  Span span;
  RuntimeError(RuntimeErrorKind k, const std::string& message, Span where = {})
      : std::runtime_error(message), kind(k), span(where) {}
};

// Internal control exceptions; the runtime layer maps them onto RunStatus.
// They are not part of the RuntimeErrorKind taxonomy on purpose: a wall-clock
// deadline and an output cap are harness limits, not program errors.
struct WallClockExceeded {};
struct OutputOverflow {};

}  // namespace pylang
