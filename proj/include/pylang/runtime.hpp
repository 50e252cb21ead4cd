#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pylang/corpus.hpp"
#include "pylang/interp.hpp"

namespace pylang {

// Classified result of one sandboxed execution. Completed means the program
// ran to the end but has not been compared against an expectation yet;
// judge_test() resolves Completed into Pass or WrongOutput.
enum class RunStatus {
  Completed,
  Pass,
  WrongOutput,
  SyntaxError,
  RuntimeError,
  Timeout,
  OutputOverflow,
};

const char* to_string(RunStatus status);

struct RunOutcome {
  RunStatus status = RunStatus::Completed;
  std::string stdout_text;  // populated (possibly partially) unless SyntaxError
  std::optional<Value> return_value;
  std::int64_t steps_used = 0;
  std::int64_t wall_millis = 0;
  std::string error_detail;  // empty when the run completed
  Span error_span;
};

// Lex, parse, run the top level, then call `solve(stdin)` if the program
// bound one. Every failure mode is encoded in the outcome; nothing escapes.
// The judged program has no I/O primitives beyond its stdin argument and
// print, so isolation holds by construction. Execution happens on a
// dedicated thread with a large stack so legal deep recursion cannot crash
// the host.
RunOutcome run_source(const std::string& source, const std::string& stdin_text,
                      const ExecLimits& limits);

// Runs one test: Completed becomes Pass iff the captured stdout matches the
// expectation (normalized by default, byte-exact in strict mode) and, when
// the test pins a return value, the returned value equals it.
RunOutcome judge_test(const std::string& source, const TestCase& test,
                      const ExecLimits& limits, bool strict_compare = false);

// Competitive-judging comparison form: CRLF/CR become LF, trailing spaces and
// tabs are stripped from each line, trailing blank lines are dropped.
std::string normalize_output(const std::string& text);

// Exit-code contract for the `run` CLI command.
// 0 = completed, 2 = syntax error, 3 = runtime error, 4 = timeout,
// 5 = output overflow.
int exit_code_for(RunStatus status);

}  // namespace pylang
