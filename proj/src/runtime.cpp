#include "pylang/runtime.hpp"

#include <pthread.h>

#include <chrono>
#include <exception>
#include <functional>

#include "pylang/lexer.hpp"
#include "pylang/parser.hpp"

namespace pylang {

namespace {

constexpr const char* kEntryName = "solve";

// Judged programs may legally recurse thousands of calls deep; run them on a
// thread with a large stack so that cannot take down the host process.
void run_on_execution_stack(const std::function<void()>& fn) {
  constexpr size_t kStackBytes = 64ull * 1024 * 1024;

  struct Call {
    const std::function<void()>* fn;
    std::exception_ptr error;
  } call{&fn, nullptr};

  pthread_attr_t attr;
  if (pthread_attr_init(&attr) != 0) {
    fn();
    return;
  }
  pthread_attr_setstacksize(&attr, kStackBytes);

  auto trampoline = [](void* raw) -> void* {
    auto* c = static_cast<Call*>(raw);
    try {
      (*c->fn)();
    } catch (...) {
      c->error = std::current_exception();
    }
    return nullptr;
  };

  pthread_t tid;
  int rc = pthread_create(&tid, &attr, trampoline, &call);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(tid, nullptr);
  if (call.error) std::rethrow_exception(call.error);
}

bool outputs_match(const std::string& actual, const std::string& expected,
                   bool strict) {
  if (strict) return actual == expected;
  return normalize_output(actual) == normalize_output(expected);
}

}  // namespace

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::Pass: return "pass";
    case RunStatus::WrongOutput: return "wrong output";
    case RunStatus::SyntaxError: return "syntax error";
    case RunStatus::RuntimeError: return "runtime error";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::OutputOverflow: return "output overflow";
  }
  return "unknown";
}

int exit_code_for(RunStatus status) {
  switch (status) {
    case RunStatus::Completed:
    case RunStatus::Pass: return 0;
    case RunStatus::WrongOutput: return 1;
    case RunStatus::SyntaxError: return 2;
    case RunStatus::RuntimeError: return 3;
    case RunStatus::Timeout: return 4;
    case RunStatus::OutputOverflow: return 5;
  }
  return 3;
}

std::string normalize_output(const std::string& text) {
  std::string unified;
  unified.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      unified += '\n';
    } else {
      unified += c;
    }
  }

  std::string out;
  out.reserve(unified.size());
  size_t start = 0;
  while (true) {
    size_t end = unified.find('\n', start);
    bool last = end == std::string::npos;
    size_t stop = last ? unified.size() : end;
    size_t trimmed = stop;
    while (trimmed > start && (unified[trimmed - 1] == ' ' || unified[trimmed - 1] == '\t'))
      --trimmed;
    out.append(unified, start, trimmed - start);
    if (last) break;
    out += '\n';
    start = end + 1;
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

RunOutcome run_source(const std::string& source, const std::string& stdin_text,
                      const ExecLimits& limits) {
  RunOutcome out;
  auto t0 = std::chrono::steady_clock::now();

  run_on_execution_stack([&] {
    Program program;
    try {
      program = parse_program(tokenize(source));
    } catch (const LexError& e) {
      out.status = RunStatus::SyntaxError;
      out.error_detail = e.what();
      out.error_span = e.span;
      return;
    } catch (const ParseError& e) {
      out.status = RunStatus::SyntaxError;
      out.error_detail = e.what();
      out.error_span = e.span;
      return;
    }

    Interpreter interp(program, out.stdout_text, limits);
    try {
      interp.execute_top_level();
      // Programs that bind the entry convention get called with stdin; plain
      // scripts just run their top level.
      if (interp.globals().find(kEntryName) != nullptr) {
        std::vector<Value> args;
        args.push_back(Value::str(stdin_text));
        out.return_value = interp.call_by_name(kEntryName, std::move(args));
      }
      out.status = RunStatus::Completed;
    } catch (const RuntimeError& e) {
      out.status = e.kind == RuntimeErrorKind::StepBudgetExceeded
                       ? RunStatus::Timeout
                       : RunStatus::RuntimeError;
      out.error_detail = std::string(to_string(e.kind)) + ": " + e.what();
      out.error_span = e.span;
    } catch (const WallClockExceeded&) {
      out.status = RunStatus::Timeout;
      out.error_detail = "wall clock limit exceeded";
    } catch (const OutputOverflow&) {
      out.status = RunStatus::OutputOverflow;
      out.error_detail = "output limit exceeded";
    } catch (const std::bad_alloc&) {
      out.status = RunStatus::RuntimeError;
      out.error_detail = "out of memory";
    } catch (const std::exception& e) {
      out.status = RunStatus::RuntimeError;
      out.error_detail = std::string("internal error: ") + e.what();
    }
    out.steps_used = interp.steps_used();
  });

  out.wall_millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return out;
}

RunOutcome judge_test(const std::string& source, const TestCase& test,
                      const ExecLimits& limits, bool strict_compare) {
  RunOutcome out = run_source(source, test.stdin_text, limits);
  if (out.status != RunStatus::Completed) return out;

  bool pass = true;
  if (test.expected_stdout)
    pass = outputs_match(out.stdout_text, *test.expected_stdout, strict_compare);
  if (pass && test.expected_return) {
    pass = out.return_value.has_value() &&
           out.return_value->is(ValueKind::Int) &&
           cmp(out.return_value->as_int(),
               mpz_class(static_cast<long>(*test.expected_return))) == 0;
  }
  out.status = pass ? RunStatus::Pass : RunStatus::WrongOutput;
  return out;
}

}  // namespace pylang
