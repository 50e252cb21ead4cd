#include "pylang/interp.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace pylang {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::int64_t kWallCheckInterval = 4096;
// Caps the size of any single big-integer result so a judged program cannot
// drive GMP into allocation failure (which aborts rather than throws).
constexpr size_t kMaxIntBits = size_t{1} << 24;
// Absolute cap on a single string value, independent of the step budget.
constexpr unsigned long kMaxStringBytes = 1ul << 31;

[[noreturn]] void type_error(const std::string& message, Span span) {
  throw RuntimeError(RuntimeErrorKind::TypeError, message, span);
}

bool is_numeric(const Value& v) {
  return v.is(ValueKind::Int) || v.is(ValueKind::Float);
}

double int_to_double(const mpz_class& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 1024)
    return sgn(z) > 0 ? HUGE_VAL : -HUGE_VAL;
  return z.get_d();
}

double num_as_double(const Value& v) {
  return v.is(ValueKind::Int) ? int_to_double(v.as_int()) : v.as_float();
}

// Exact three-way comparison of an integer against a double.
// Returns -1/0/1, or 2 when unordered (NaN).
int cmp_int_double(const mpz_class& a, double d) {
  if (std::isnan(d)) return 2;
  if (std::isinf(d)) return d > 0 ? -1 : 1;
  int c = mpz_cmp_d(a.get_mpz_t(), d);
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

// Floored modulo on doubles: the result takes the divisor's sign.
double float_mod(double a, double b) {
  double r = std::fmod(a, b);
  if (r != 0.0) {
    if ((r < 0.0) != (b < 0.0)) r += b;
  } else {
    r = std::copysign(0.0, b);
  }
  return r;
}

Value make_bool(bool b) { return Value::from_int(b ? 1 : 0); }

bool numeric_truth(const Value& v) {
  if (v.is(ValueKind::Int)) return sgn(v.as_int()) != 0;
  return v.as_float() != 0.0;  // NaN counts as true
}

Value repeat_string(const std::string& s, const mpz_class& count, Span span) {
  if (sgn(count) <= 0 || s.empty()) return Value::str("");
  mpz_class total = count * mpz_class(static_cast<unsigned long>(s.size()));
  if (total > mpz_class(kMaxStringBytes))
    throw RuntimeError(RuntimeErrorKind::StepBudgetExceeded,
                       "string length limit exceeded", span);
  unsigned long n = count.get_ui();
  std::string out;
  out.reserve(s.size() * n);
  for (unsigned long i = 0; i < n; ++i) out += s;
  return Value::str(std::move(out));
}

bool value_equals(const Value& l, const Value& r) {
  using K = ValueKind;
  if (l.is(K::Int) && r.is(K::Int)) return cmp(l.as_int(), r.as_int()) == 0;
  if (l.is(K::Float) && r.is(K::Float)) return l.as_float() == r.as_float();
  if (l.is(K::Int) && r.is(K::Float)) return cmp_int_double(l.as_int(), r.as_float()) == 0;
  if (l.is(K::Float) && r.is(K::Int)) return cmp_int_double(r.as_int(), l.as_float()) == 0;
  if (l.is(K::Str) && r.is(K::Str)) return l.as_str() == r.as_str();
  if (l.is(K::Array) && r.is(K::Array)) return l.as_array() == r.as_array();
  if (l.is(K::Func) && r.is(K::Func)) return l.as_func() == r.as_func();
  return false;  // cross-kind values are simply unequal
}

// -1/0/1 for orderable pairs, 2 when unordered (NaN involved). Throws for
// pairs that do not admit ordering at all.
int order_values(const Value& l, const Value& r, Span span) {
  using K = ValueKind;
  if (l.is(K::Int) && r.is(K::Int)) {
    int c = cmp(l.as_int(), r.as_int());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  if (is_numeric(l) && is_numeric(r)) {
    if (l.is(K::Int)) return cmp_int_double(l.as_int(), r.as_float());
    if (r.is(K::Int)) {
      int c = cmp_int_double(r.as_int(), l.as_float());
      return c == 2 ? 2 : -c;
    }
    double a = l.as_float(), b = r.as_float();
    if (std::isnan(a) || std::isnan(b)) return 2;
    return a < b ? -1 : a > b ? 1 : 0;
  }
  if (l.is(K::Str) && r.is(K::Str)) {
    int c = l.as_str().compare(r.as_str());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  type_error(std::string("cannot order ") + to_string(l.kind()) + " and " +
                 to_string(r.kind()),
             span);
}

[[noreturn]] void bad_operands(BinaryOp op, const Value& l, const Value& r, Span span) {
  type_error(std::string("unsupported operand types for '") + to_string(op) + "': " +
                 to_string(l.kind()) + " and " + to_string(r.kind()),
             span);
}

}  // namespace

Value builtin_len(const Value& v, Span span) {
  if (v.is(ValueKind::Str))
    return Value(mpz_class(static_cast<unsigned long>(v.as_str().size())));
  if (v.is(ValueKind::Array))
    return Value(mpz_class(static_cast<unsigned long>(v.as_array()->entries.size())));
  type_error(std::string("len() expects a string or an array, not ") +
                 to_string(v.kind()),
             span);
}

Value eval_binary(BinaryOp op, const Value& l, const Value& r, Span span) {
  using K = ValueKind;
  switch (op) {
    case BinaryOp::Add:
      if (l.is(K::Int) && r.is(K::Int)) return Value(mpz_class(l.as_int() + r.as_int()));
      if (is_numeric(l) && is_numeric(r))
        return Value(num_as_double(l) + num_as_double(r));
      if (l.is(K::Str) && r.is(K::Str)) {
        if (l.as_str().size() + r.as_str().size() > kMaxStringBytes)
          throw RuntimeError(RuntimeErrorKind::StepBudgetExceeded,
                             "string length limit exceeded", span);
        return Value::str(l.as_str() + r.as_str());
      }
      bad_operands(op, l, r, span);
    case BinaryOp::Sub:
      if (l.is(K::Int) && r.is(K::Int)) return Value(mpz_class(l.as_int() - r.as_int()));
      if (is_numeric(l) && is_numeric(r))
        return Value(num_as_double(l) - num_as_double(r));
      bad_operands(op, l, r, span);
    case BinaryOp::Mul:
      if (l.is(K::Int) && r.is(K::Int)) return Value(mpz_class(l.as_int() * r.as_int()));
      if (is_numeric(l) && is_numeric(r))
        return Value(num_as_double(l) * num_as_double(r));
      if (l.is(K::Str) && r.is(K::Int)) return repeat_string(l.as_str(), r.as_int(), span);
      if (l.is(K::Int) && r.is(K::Str)) return repeat_string(r.as_str(), l.as_int(), span);
      bad_operands(op, l, r, span);
    case BinaryOp::Div: {
      if (!is_numeric(l) || !is_numeric(r)) bad_operands(op, l, r, span);
      bool zero = r.is(K::Int) ? sgn(r.as_int()) == 0 : r.as_float() == 0.0;
      if (zero)
        throw RuntimeError(RuntimeErrorKind::DivisionByZero, "division by zero", span);
      if (l.is(K::Int) && r.is(K::Int)) {
        // True division: the exact rational rounded to double, so huge
        // operands do not lose precision before dividing.
        mpq_class q(l.as_int(), r.as_int());
        q.canonicalize();
        return Value(q.get_d());
      }
      return Value(num_as_double(l) / num_as_double(r));
    }
    case BinaryOp::Mod: {
      if (l.is(K::Int) && r.is(K::Int)) {
        if (sgn(r.as_int()) == 0)
          throw RuntimeError(RuntimeErrorKind::DivisionByZero, "modulo by zero", span);
        mpz_class result;
        mpz_fdiv_r(result.get_mpz_t(), l.as_int().get_mpz_t(), r.as_int().get_mpz_t());
        return Value(std::move(result));
      }
      if (l.is(K::Float) && r.is(K::Float)) {
        if (r.as_float() == 0.0)
          throw RuntimeError(RuntimeErrorKind::DivisionByZero, "modulo by zero", span);
        return Value(float_mod(l.as_float(), r.as_float()));
      }
      bad_operands(op, l, r, span);
    }
    case BinaryOp::Eq: return make_bool(value_equals(l, r));
    case BinaryOp::Ne: return make_bool(!value_equals(l, r));
    case BinaryOp::Lt: {
      int c = order_values(l, r, span);
      return make_bool(c == -1);
    }
    case BinaryOp::Gt: {
      int c = order_values(l, r, span);
      return make_bool(c == 1);
    }
    case BinaryOp::Le: {
      int c = order_values(l, r, span);
      return make_bool(c == -1 || c == 0);
    }
    case BinaryOp::Ge: {
      int c = order_values(l, r, span);
      return make_bool(c == 1 || c == 0);
    }
    case BinaryOp::And:
    case BinaryOp::Or: {
      if (!is_numeric(l) || !is_numeric(r)) bad_operands(op, l, r, span);
      bool a = numeric_truth(l), b = numeric_truth(r);
      return make_bool(op == BinaryOp::And ? (a && b) : (a || b));
    }
  }
  bad_operands(op, l, r, span);
}

Interpreter::Interpreter(const Program& program, std::string& output_sink,
                         ExecLimits limits)
    : program_(program),
      sink_(output_sink),
      limits_(limits),
      wall_check_countdown_(kWallCheckInterval) {
  if (limits.max_steps <= 0 || limits.max_wall_millis <= 0 ||
      limits.max_output_bytes <= 0 || limits.max_recursion <= 0)
    throw std::invalid_argument("ExecLimits fields must be strictly positive");
  deadline_ = std::chrono::steady_clock::now() +
              std::chrono::milliseconds(limits.max_wall_millis);
}

void Interpreter::charge(std::int64_t amount, Span span) {
  steps_ += amount;
  if (steps_ > limits_.max_steps) {
    steps_ = limits_.max_steps;
    throw RuntimeError(RuntimeErrorKind::StepBudgetExceeded, "step budget exceeded",
                       span);
  }
  wall_check_countdown_ -= amount;
  if (wall_check_countdown_ <= 0) {
    wall_check_countdown_ = kWallCheckInterval;
    check_wall(span);
  }
}

void Interpreter::check_wall(Span span) {
  (void)span;
  if (std::chrono::steady_clock::now() > deadline_) throw WallClockExceeded{};
}

void Interpreter::append_output(const std::string& chunk) {
  std::int64_t room = limits_.max_output_bytes - static_cast<std::int64_t>(sink_.size());
  if (static_cast<std::int64_t>(chunk.size()) > room) {
    if (room > 0) sink_.append(chunk, 0, static_cast<size_t>(room));
    throw OutputOverflow{};
  }
  sink_ += chunk;
}

bool Interpreter::truthy(const Value& v, Span span) {
  if (!is_numeric(v))
    type_error(std::string("condition must be a number, not ") + to_string(v.kind()),
               span);
  return numeric_truth(v);
}

void Interpreter::print_value(const Value& v, Span span) {
  if (v.is(ValueKind::Array) || v.is(ValueKind::Func))
    type_error(std::string("print() cannot print a ") + to_string(v.kind()) + " value",
               span);
  if (v.is(ValueKind::Int)) {
    size_t limbs = mpz_size(v.as_int().get_mpz_t());
    if (limbs > 64) charge(static_cast<std::int64_t>(limbs / 8), span);
  } else if (v.is(ValueKind::Str) && v.as_str().size() > 256) {
    charge(static_cast<std::int64_t>(v.as_str().size() / 16), span);
  }
  std::string text = to_display_string(v);
  text += '\n';
  append_output(text);
}

void Interpreter::execute_top_level() {
  for (const auto& item : program_.items) {
    if (std::holds_alternative<std::shared_ptr<const FunctionInfo>>(item.node)) {
      const auto& fn = std::get<std::shared_ptr<const FunctionInfo>>(item.node);
      charge(1, fn->span);
      globals_.assign(fn->name, Value(FuncRef(fn)));
    } else {
      Flow flow = exec_stmt(*std::get<StmtPtr>(item.node), globals_);
      if (flow == Flow::Return) break;  // a top-level return ends the run
    }
  }
}

Value Interpreter::call_by_name(const std::string& name, std::vector<Value> args,
                                Span call_site) {
  Value* bound = globals_.find(name);
  if (!bound)
    throw RuntimeError(RuntimeErrorKind::UndefinedFunction,
                       "undefined function '" + name + "'", call_site);
  if (!bound->is(ValueKind::Func))
    type_error("'" + name + "' is not a function", call_site);
  FuncRef fn = bound->as_func();
  return call_function(fn, std::move(args), call_site);
}

Value Interpreter::call_function(const FuncRef& fn, std::vector<Value> args,
                                 Span call_site) {
  if (call_depth_ >= limits_.max_recursion)
    throw RuntimeError(RuntimeErrorKind::RecursionLimit, "recursion limit exceeded",
                       call_site);
  if (args.size() != fn->params.size())
    throw RuntimeError(RuntimeErrorKind::ArityMismatch,
                       "function '" + fn->name + "' expects " +
                           std::to_string(fn->params.size()) + " argument(s), got " +
                           std::to_string(args.size()),
                       call_site);
  struct DepthGuard {
    int& depth;
    explicit DepthGuard(int& d) : depth(++d) {}
    ~DepthGuard() { --depth; }
  } guard(call_depth_);

  Scope locals;
  locals.parent = &globals_;
  for (size_t i = 0; i < args.size(); ++i)
    locals.assign(fn->params[i], std::move(args[i]));
  Flow flow = exec_block(fn->body, locals);
  if (flow == Flow::Return) return std::move(return_value_);
  return Value::from_int(0);  // falling off the end returns 0
}

Interpreter::Flow Interpreter::exec_block(const Block& block, Scope& scope) {
  for (const auto& stmt : block.stmts) {
    Flow flow = exec_stmt(*stmt, scope);
    if (flow == Flow::Return) return flow;
  }
  return Flow::Normal;
}

Interpreter::Flow Interpreter::exec_stmt(const Stmt& stmt, Scope& scope) {
  charge(1, stmt.span);
  return std::visit(
      overloaded{
          [&](const AssignStmt& a) -> Flow {
            Value value = eval(*a.value, scope);
            if (!a.index) {
              scope.assign(a.target, std::move(value));
              return Flow::Normal;
            }
            Value index = eval(*a.index, scope);
            Value* slot = scope.find(a.target);
            if (!slot)
              throw RuntimeError(RuntimeErrorKind::UndefinedName,
                                 "undefined variable '" + a.target + "'", stmt.span);
            if (slot->is(ValueKind::Str))
              type_error("strings are immutable; cannot assign into '" + a.target + "'",
                         stmt.span);
            if (!slot->is(ValueKind::Array))
              type_error("'" + a.target + "' is not an array", stmt.span);
            if (!index.is(ValueKind::Int))
              type_error("array index must be an integer", stmt.span);
            slot->as_array()->entries.insert_or_assign(index.as_int(), std::move(value));
            return Flow::Normal;
          },
          [&](const IfStmt& i) -> Flow {
            if (truthy(eval(*i.cond, scope), i.cond->span))
              return exec_block(i.then_block, scope);
            if (i.else_block) return exec_block(*i.else_block, scope);
            return Flow::Normal;
          },
          [&](const WhileStmt& w) -> Flow {
            while (truthy(eval(*w.cond, scope), w.cond->span)) {
              Flow flow = exec_block(w.body, scope);
              if (flow == Flow::Return) return flow;
            }
            return Flow::Normal;
          },
          [&](const ReturnStmt& r) -> Flow {
            return_value_ = r.value ? eval(*r.value, scope) : Value::from_int(0);
            return Flow::Return;
          },
          [&](const PrintStmt& p) -> Flow {
            Value value = eval(*p.value, scope);
            print_value(value, stmt.span);
            return Flow::Normal;
          },
          [&](const ExprStmt& e) -> Flow {
            eval(*e.expr, scope);
            return Flow::Normal;
          },
      },
      stmt.node);
}

Value Interpreter::eval(const Expr& expr, Scope& scope) {
  charge(1, expr.span);
  return std::visit(
      overloaded{
          [&](const NumberLit& n) -> Value {
            if (std::holds_alternative<mpz_class>(n.value))
              return Value(std::get<mpz_class>(n.value));
            return Value(std::get<double>(n.value));
          },
          [&](const StringLit& s) -> Value { return Value::str(s.value); },
          [&](const VarRef& v) -> Value {
            Value* bound = scope.find(v.name);
            if (!bound)
              throw RuntimeError(RuntimeErrorKind::UndefinedName,
                                 "undefined variable '" + v.name + "'", expr.span);
            return *bound;
          },
          [&](const ArrayLit& a) -> Value {
            Value arr = Value::array();
            auto& entries = arr.as_array()->entries;
            for (size_t i = 0; i < a.items.size(); ++i)
              entries.insert_or_assign(mpz_class(static_cast<unsigned long>(i)),
                                       eval(*a.items[i], scope));
            return arr;
          },
          [&](const IndexExpr& ix) -> Value {
            Value* bound = scope.find(ix.base);
            if (!bound)
              throw RuntimeError(RuntimeErrorKind::UndefinedName,
                                 "undefined variable '" + ix.base + "'", expr.span);
            // Copy the binding: evaluating the subscript may rebind names and
            // invalidate the pointer. Arrays stay aliased through the copy.
            Value base = *bound;
            Value subscript = eval(*ix.subscript, scope);
            if (base.is(ValueKind::Array)) {
              if (!subscript.is(ValueKind::Int))
                type_error("array index must be an integer", expr.span);
              const auto& entries = base.as_array()->entries;
              auto it = entries.find(subscript.as_int());
              return it == entries.end() ? sentinel_value() : it->second;
            }
            if (base.is(ValueKind::Str)) {
              if (!subscript.is(ValueKind::Int))
                type_error("string index must be an integer", expr.span);
              const std::string& s = base.as_str();
              const mpz_class& k = subscript.as_int();
              if (sgn(k) < 0 ||
                  mpz_cmp_ui(k.get_mpz_t(), static_cast<unsigned long>(s.size())) >= 0)
                return Value::str("");  // out of bounds reads as empty
              return Value::str(std::string(1, s[k.get_ui()]));
            }
            type_error("'" + ix.base + "' (" + to_string(base.kind()) +
                           ") is not indexable",
                       expr.span);
          },
          [&](const CallExpr& c) -> Value { return eval_call(c, expr.span, scope); },
          [&](const BinaryExpr& b) -> Value {
            if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
              Value lhs = eval(*b.lhs, scope);
              if (!is_numeric(lhs))
                type_error(std::string("logical operand must be a number, not ") +
                               to_string(lhs.kind()),
                           b.lhs->span);
              bool lt = numeric_truth(lhs);
              if (b.op == BinaryOp::And && !lt) return Value::from_int(0);
              if (b.op == BinaryOp::Or && lt) return Value::from_int(1);
              Value rhs = eval(*b.rhs, scope);
              if (!is_numeric(rhs))
                type_error(std::string("logical operand must be a number, not ") +
                               to_string(rhs.kind()),
                           b.rhs->span);
              return make_bool(numeric_truth(rhs));
            }
            Value lhs = eval(*b.lhs, scope);
            Value rhs = eval(*b.rhs, scope);
            charge_for_binary(b.op, lhs, rhs, expr.span);
            return eval_binary(b.op, lhs, rhs, expr.span);
          },
      },
      expr.node);
}

Value Interpreter::eval_call(const CallExpr& call, Span span, Scope& scope) {
  Value callee;
  bool bound = false;
  if (Value* p = scope.find(call.callee)) {
    callee = *p;
    bound = true;
    if (!callee.is(ValueKind::Func))
      type_error("'" + call.callee + "' is not a function", span);
  }
  std::vector<Value> args;
  args.reserve(call.args.size());
  for (const auto& arg : call.args) args.push_back(eval(*arg, scope));
  if (bound) return call_function(callee.as_func(), std::move(args), span);
  if (call.callee == "len") {
    if (args.size() != 1)
      throw RuntimeError(RuntimeErrorKind::ArityMismatch,
                         "len() expects 1 argument, got " + std::to_string(args.size()),
                         span);
    return builtin_len(args[0], span);
  }
  throw RuntimeError(RuntimeErrorKind::UndefinedFunction,
                     "undefined function '" + call.callee + "'", span);
}

// Extra step charges for operations whose cost scales with operand size, so
// the step budget also bounds time and memory inside single AST nodes.
void Interpreter::charge_for_binary(BinaryOp op, const Value& l, const Value& r,
                                    Span span) {
  using K = ValueKind;
  auto int_limbs = [](const Value& v) {
    return static_cast<std::int64_t>(mpz_size(v.as_int().get_mpz_t()));
  };
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub: {
      if (l.is(K::Int) && r.is(K::Int)) {
        std::int64_t limbs = int_limbs(l) + int_limbs(r);
        if (limbs > 64) charge(limbs / 64, span);
      } else if (op == BinaryOp::Add && l.is(K::Str) && r.is(K::Str)) {
        size_t total = l.as_str().size() + r.as_str().size();
        if (total > 256) charge(static_cast<std::int64_t>(total / 16), span);
      }
      return;
    }
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: {
      if (l.is(K::Int) && r.is(K::Int)) {
        std::int64_t limbs = int_limbs(l) + int_limbs(r);
        if (op == BinaryOp::Mul &&
            static_cast<size_t>(limbs) * (sizeof(mp_limb_t) * 8) > kMaxIntBits)
          throw RuntimeError(RuntimeErrorKind::StepBudgetExceeded,
                             "integer size limit exceeded", span);
        if (limbs > 64) {
          charge(limbs / 8, span);
          check_wall(span);
        }
      } else if (op == BinaryOp::Mul &&
                 ((l.is(K::Str) && r.is(K::Int)) || (l.is(K::Int) && r.is(K::Str)))) {
        const std::string& s = l.is(K::Str) ? l.as_str() : r.as_str();
        const mpz_class& count = l.is(K::Int) ? l.as_int() : r.as_int();
        if (sgn(count) > 0 && !s.empty()) {
          mpz_class total = count * mpz_class(static_cast<unsigned long>(s.size()));
          if (total > mpz_class(kMaxStringBytes))
            throw RuntimeError(RuntimeErrorKind::StepBudgetExceeded,
                               "string length limit exceeded", span);
          unsigned long bytes = total.get_ui();
          if (bytes > 256) {
            charge(static_cast<std::int64_t>(bytes / 16), span);
            check_wall(span);
          }
        }
      }
      return;
    }
    default: {
      // Comparisons on big operands still walk them.
      if (l.is(K::Int) && r.is(K::Int)) {
        std::int64_t limbs = int_limbs(l) + int_limbs(r);
        if (limbs > 64) charge(limbs / 64, span);
      } else if (l.is(K::Str) && r.is(K::Str)) {
        size_t total = l.as_str().size() + r.as_str().size();
        if (total > 4096) charge(static_cast<std::int64_t>(total / 64), span);
      }
      return;
    }
  }
}

Value call_entry(const Program& program, const std::string& entry,
                 const std::string& stdin_text, std::string& output_sink,
                 const ExecLimits& limits) {
  Interpreter interp(program, output_sink, limits);
  interp.execute_top_level();
  std::vector<Value> args;
  args.push_back(Value::str(stdin_text));
  return interp.call_by_name(entry, std::move(args));
}

}  // namespace pylang
