#include "pylang/diag.hpp"

namespace pylang {

const char* to_string(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::TypeError: return "type error";
    case RuntimeErrorKind::UndefinedName: return "undefined name";
    case RuntimeErrorKind::UndefinedFunction: return "undefined function";
    case RuntimeErrorKind::DivisionByZero: return "division by zero";
    case RuntimeErrorKind::ArityMismatch: return "arity mismatch";
    case RuntimeErrorKind::StepBudgetExceeded: return "step budget exceeded";
    case RuntimeErrorKind::RecursionLimit: return "recursion limit";
  }
  return "unknown";
}

}  // namespace pylang
