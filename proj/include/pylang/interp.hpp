#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pylang/ast.hpp"
#include "pylang/diag.hpp"
#include "pylang/value.hpp"

namespace pylang {

struct ExecLimits {
  std::int64_t max_steps = 50'000'000;
  std::int64_t max_wall_millis = 5'000;
  std::int64_t max_output_bytes = 16ll * 1024 * 1024;
  int max_recursion = 10'000;
};

// One variable frame. Function calls get a fresh frame whose parent is the
// global frame; assignment always writes to the innermost frame, so locals
// shadow globals and never leak out of a call.
struct Scope {
  std::unordered_map<std::string, Value> bindings;
  Scope* parent = nullptr;

  Value* find(const std::string& name) {
    for (Scope* s = this; s != nullptr; s = s->parent) {
      auto it = s->bindings.find(name);
      if (it != s->bindings.end()) return &it->second;
    }
    return nullptr;
  }
  void assign(const std::string& name, Value v) {
    bindings.insert_or_assign(name, std::move(v));
  }
};

// Tree-walking evaluator. Each instance owns its scopes, output sink, and
// budgets, so distinct instances can run on distinct threads; a single
// instance is strictly single-threaded.
//
// Budget model: every evaluated AST node costs one step; operations on big
// integers and long strings charge extra steps proportional to their size,
// so the step budget also bounds memory and time spent inside single nodes.
// Exceeding the budget raises RuntimeError(StepBudgetExceeded); passing the
// wall-clock deadline raises WallClockExceeded; exceeding max_output_bytes
// raises OutputOverflow.
//
// Note: deeply recursive programs nest native stack frames. run_source()
// in runtime.hpp provides a generously sized execution stack; call this
// class directly only for shallow workloads (tests, tooling).
class Interpreter {
 public:
  Interpreter(const Program& program, std::string& output_sink, ExecLimits limits);

  // Runs function definitions and top-level statements in source order.
  // A top-level `return` stops the run early.
  void execute_top_level();

  // Calls a bound function by name. `call_site` is used for diagnostics.
  Value call_by_name(const std::string& name, std::vector<Value> args,
                     Span call_site = {});

  Scope& globals() { return globals_; }
  std::int64_t steps_used() const { return steps_; }

 private:
  enum class Flow { Normal, Return };

  Flow exec_block(const Block& block, Scope& scope);
  Flow exec_stmt(const Stmt& stmt, Scope& scope);
  Value eval(const Expr& expr, Scope& scope);
  Value eval_call(const CallExpr& call, Span span, Scope& scope);
  Value call_function(const FuncRef& fn, std::vector<Value> args, Span call_site);
  bool truthy(const Value& v, Span span);
  void print_value(const Value& v, Span span);
  void append_output(const std::string& chunk);
  void charge(std::int64_t amount, Span span);
  void charge_for_binary(BinaryOp op, const Value& lhs, const Value& rhs, Span span);
  void check_wall(Span span);

  const Program& program_;
  std::string& sink_;
  ExecLimits limits_;
  Scope globals_;
  Value return_value_;
  std::int64_t steps_ = 0;
  std::int64_t wall_check_countdown_;
  int call_depth_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

// Convenience for the `solve(input)` convention: executes the program once to
// bind globals, then invokes `entry` with the whole stdin text as its single
// argument. Returns the function's return value (0 if it falls off the end).
Value call_entry(const Program& program, const std::string& entry,
                 const std::string& stdin_text, std::string& output_sink,
                 const ExecLimits& limits);

// The only built-in: character count of a string or number of assigned keys
// of an array. Anything else is a TypeError.
Value builtin_len(const Value& v, Span span = {});

// Applies a binary operator to already-evaluated operands. `&&`/`||` here use
// both operands; short-circuiting happens in the evaluator, not in this
// function. Exposed for tests.
Value eval_binary(BinaryOp op, const Value& lhs, const Value& rhs, Span span = {});

}  // namespace pylang
