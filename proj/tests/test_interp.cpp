#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pylang/interp.hpp"
#include "pylang/lexer.hpp"
#include "pylang/parser.hpp"
#include "test_support.hpp"

using namespace pylang;

namespace {

struct ExecResult {
  std::string output;
  std::optional<RuntimeErrorKind> error;
};

ExecResult exec_program(const std::string& source, ExecLimits limits = {}) {
  ExecResult result;
  Program program = parse_program(tokenize(source));
  Interpreter interp(program, result.output, limits);
  try {
    interp.execute_top_level();
  } catch (const RuntimeError& e) {
    result.error = e.kind;
  }
  return result;
}

Value entry_value(const std::string& source, const std::string& stdin_text,
                  std::string* output = nullptr) {
  std::string sink;
  Program program = parse_program(tokenize(source));
  Value v = call_entry(program, "solve", stdin_text, sink, ExecLimits{});
  if (output) *output = sink;
  return v;
}

Value vint(long v) { return Value::from_int(v); }
Value vfloat(double v) { return Value(v); }
Value vstr(const std::string& s) { return Value::str(s); }

}  // namespace

TEST_CASE("pair counting program matches a brute-force oracle") {
  // Independent oracle: count pairs in {1,2,3} with n*(a[i]+a[j]) == 2*sum.
  const int a[3] = {1, 2, 3};
  const int n = 3, total = 6;
  int expected = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (n * (a[i] + a[j]) == 2 * total) ++expected;
  REQUIRE(expected == 1);

  auto result = exec_program(fixtures::kPairCount);
  CHECK(!result.error);
  CHECK(result.output == "1\n");
}

TEST_CASE("unassigned array reads yield the sentinel") {
  auto result = exec_program("a = []; print(a[5]);");
  CHECK(result.output == "-9223372036854775807\n");

  auto negative = exec_program("a = []; a[-3] = 7; print(a[-3]); print(a[3]);");
  CHECK(negative.output == "7\n-9223372036854775807\n");
}

TEST_CASE("string repetition") {
  CHECK(exec_program("print(\"ab\" * 3);").output == "ababab\n");
  CHECK(exec_program("print(3 * \"ab\");").output == "ababab\n");
  CHECK(exec_program("print(\"x\" * 0);").output == "\n");
  CHECK(exec_program("print(\"x\" * -2);").output == "\n");
}

TEST_CASE("no implicit coercion between strings and numbers") {
  auto result = exec_program("x = \"a\" + 1;");
  REQUIRE(result.error.has_value());
  CHECK(*result.error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = 1 + \"a\";").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = \"a\" * \"b\";").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = \"a\" * 1.5;").error == RuntimeErrorKind::TypeError);
}

TEST_CASE("out-of-bounds string indexing reads as empty") {
  CHECK(exec_program("s = \"ab\"; print(s[10]);").output == "\n");
  CHECK(exec_program("s = \"ab\"; print(s[-1]);").output == "\n");
  CHECK(exec_program("s = \"ab\"; print(s[1]);").output == "b\n");
}

TEST_CASE("uniform string program returns 1 or 0") {
  CHECK(entry_value(fixtures::kUniformString, "aaa").as_int() == 1);
  CHECK(entry_value(fixtures::kUniformString, "aba").as_int() == 0);
  CHECK(entry_value(fixtures::kUniformString, "").as_int() == 0);
  std::string output;
  entry_value(fixtures::kUniformString, "aaa", &output);
  CHECK(output.empty());
}

TEST_CASE("vowel check program prints YES/NO") {
  std::string output;
  entry_value(fixtures::kVowelCheck, "nano\n", &output);
  CHECK(output == "YES\n");
  output.clear();
  entry_value(fixtures::kVowelCheck, "bcd\n", &output);
  CHECK(output == "NO\n");
}

TEST_CASE("input parsing prologue binds the first integer") {
  std::string output;
  entry_value(fixtures::parse_first_int_program(), "123\n", &output);
  CHECK(output == "123\n");
  output.clear();
  entry_value(fixtures::parse_first_int_program(), "907\nrest\n", &output);
  CHECK(output == "907\n");
}

TEST_CASE("len counts characters and assigned keys") {
  CHECK(builtin_len(vstr("")).as_int() == 0);
  CHECK(builtin_len(vstr("abc")).as_int() == 3);
  CHECK(exec_program("a = []; a[100] = 5; print(len(a));").output == "1\n");
  CHECK(exec_program("a = []; print(len(a));").output == "0\n");
  CHECK_THROWS_AS(builtin_len(vint(5)), RuntimeError);
  CHECK(exec_program("x = len(5);").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = len(1.5);").error == RuntimeErrorKind::TypeError);
}

TEST_CASE("arbitrary precision integers stay exact") {
  // 2^64 by repeated doubling.
  auto result = exec_program(
      "p = 1; i = 0; while (i < 64) { p = p * 2; i = i + 1; } print(p);");
  CHECK(result.output == "18446744073709551616\n");

  mpz_class oracle;
  mpz_ui_pow_ui(oracle.get_mpz_t(), 2, 64);
  CHECK(result.output == format_int(oracle) + "\n");
}

TEST_CASE("comparisons return 1 or 0") {
  CHECK(eval_binary(BinaryOp::Le, vint(3), vint(3)).as_int() == 1);
  CHECK(eval_binary(BinaryOp::Lt, vint(3), vint(3)).as_int() == 0);
  CHECK(exec_program("print(3 <= 3);").output == "1\n");
}

TEST_CASE("division is true division") {
  Value half = eval_binary(BinaryOp::Div, vint(1), vint(2));
  REQUIRE(half.kind() == ValueKind::Float);
  CHECK(half.as_float() == 0.5);
  CHECK(exec_program("print(1 / 2);").output == "0.5\n");
  CHECK(exec_program("print(7 / 2);").output == "3.5\n");
  CHECK(exec_program("print(-1 / 2);").output == "-0.5\n");

  // Exact rational rounding: converting operands to double first would lose
  // the low bits of 2^200 + 1.
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 100);
  Value q = eval_binary(BinaryOp::Div, Value(mpz_class(big * big + 1)), Value(big));
  CHECK(q.as_float() == mpz_class(big).get_d());
}

TEST_CASE("modulo follows the divisor sign") {
  CHECK(eval_binary(BinaryOp::Mod, vint(7), vint(3)).as_int() == 1);
  CHECK(eval_binary(BinaryOp::Mod, vint(-7), vint(3)).as_int() == 2);
  CHECK(eval_binary(BinaryOp::Mod, vint(7), vint(-3)).as_int() == -2);
  CHECK(eval_binary(BinaryOp::Mod, vint(-7), vint(-3)).as_int() == -1);

  CHECK(eval_binary(BinaryOp::Mod, vfloat(-7.5), vfloat(2.0)).as_float() == 0.5);
  CHECK(eval_binary(BinaryOp::Mod, vfloat(7.5), vfloat(-2.0)).as_float() == -0.5);
  CHECK(eval_binary(BinaryOp::Mod, vfloat(5.5), vfloat(2.0)).as_float() == 1.5);

  // Mixed numeric modulo stays outside the domain.
  CHECK_THROWS_AS(eval_binary(BinaryOp::Mod, vint(7), vfloat(3.0)), RuntimeError);
  CHECK_THROWS_AS(eval_binary(BinaryOp::Mod, vfloat(7.0), vint(3)), RuntimeError);
  CHECK_THROWS_AS(eval_binary(BinaryOp::Mod, vstr("a"), vint(3)), RuntimeError);
}

TEST_CASE("division and modulo by zero") {
  CHECK(exec_program("x = 1 / 0;").error == RuntimeErrorKind::DivisionByZero);
  CHECK(exec_program("x = 1 % 0;").error == RuntimeErrorKind::DivisionByZero);
  CHECK(exec_program("x = 1.5 / 0.0;").error == RuntimeErrorKind::DivisionByZero);
  CHECK(exec_program("x = 1.5 % 0.0;").error == RuntimeErrorKind::DivisionByZero);
}

TEST_CASE("mixed numeric arithmetic promotes to float") {
  Value v = eval_binary(BinaryOp::Add, vint(1), vfloat(0.5));
  REQUIRE(v.kind() == ValueKind::Float);
  CHECK(v.as_float() == 1.5);
  CHECK(exec_program("print(1 + 0.5);").output == "1.5\n");
  CHECK(exec_program("print(2 * 0.5);").output == "1.0\n");
}

TEST_CASE("equality is numeric across int/float and inert across kinds") {
  CHECK(eval_binary(BinaryOp::Eq, vint(3), vfloat(3.0)).as_int() == 1);
  CHECK(eval_binary(BinaryOp::Eq, vint(3), vfloat(3.5)).as_int() == 0);
  CHECK(eval_binary(BinaryOp::Eq, vstr("1"), vint(1)).as_int() == 0);
  CHECK(eval_binary(BinaryOp::Ne, vstr("1"), vint(1)).as_int() == 1);
  CHECK(eval_binary(BinaryOp::Eq, vstr("ab"), vstr("ab")).as_int() == 1);

  // Ordering across kinds is an error; string ordering is lexicographic.
  CHECK_THROWS_AS(eval_binary(BinaryOp::Lt, vstr("1"), vint(2)), RuntimeError);
  CHECK(eval_binary(BinaryOp::Lt, vstr("abc"), vstr("abd")).as_int() == 1);
  CHECK(eval_binary(BinaryOp::Le, vint(1), vfloat(1.5)).as_int() == 1);

  // Arrays and functions compare by identity.
  Value arr1 = Value::array();
  Value arr2 = Value::array();
  CHECK(eval_binary(BinaryOp::Eq, arr1, arr1).as_int() == 1);
  CHECK(eval_binary(BinaryOp::Eq, arr1, arr2).as_int() == 0);
  CHECK(exec_program("a = []; b = a; print(a == b);").output == "1\n");
}

TEST_CASE("sparse array law") {
  for (int round = 0; round < 100; ++round) {
    long key = testsupport::rand_between(-1000, 1000);
    long value = testsupport::rand_between(-100, 100);
    std::string k = std::to_string(key);
    std::string v = std::to_string(value);
    std::string source = "a = []; before = len(a); first = a[" + k + "]; a[" + k +
                         "] = " + v + "; print(first); print(a[" + k +
                         "]); print(len(a) - before);";
    auto result = exec_program(source);
    CHECK(result.output == "-9223372036854775807\n" + v + "\n1\n");
  }
}

TEST_CASE("assigning the same key twice does not grow the array") {
  CHECK(exec_program("a = []; a[5] = 1; a[5] = 2; print(len(a)); print(a[5]);").output ==
        "1\n2\n");
}

TEST_CASE("locals shadow globals") {
  auto result = exec_program(
      "g = 10;\n"
      "function f() { g = 99; return g; }\n"
      "r = f();\n"
      "print(r); print(g);");
  CHECK(result.output == "99\n10\n");
}

TEST_CASE("functions read globals they do not assign") {
  CHECK(exec_program("g = 7; function f() { return g + 1; } print(f());").output ==
        "8\n");
}

TEST_CASE("arrays alias across calls; rebinding does not") {
  auto mutate = exec_program(
      "function poke(arr) { arr[0] = 42; }\n"
      "a = []; a[0] = 1; poke(a); print(a[0]);");
  CHECK(mutate.output == "42\n");

  auto rebind = exec_program(
      "function swap(arr) { arr = []; arr[0] = 42; }\n"
      "a = []; a[0] = 1; swap(a); print(a[0]);");
  CHECK(rebind.output == "1\n");

  auto scalar = exec_program(
      "function bump(x) { x = x + 1; return x; }\n"
      "v = 5; r = bump(v); print(v); print(r);");
  CHECK(scalar.output == "5\n6\n");
}

TEST_CASE("conditions require numbers") {
  CHECK(exec_program("if (\"x\") { print(1); }").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("a = []; while (a) { print(1); }").error ==
        RuntimeErrorKind::TypeError);
  CHECK(exec_program("if (0.5) { print(1); }").output == "1\n");
  CHECK(exec_program("if (0.0) { print(1); } else { print(2); }").output == "2\n");
}

TEST_CASE("logical operators short-circuit and return 0/1") {
  auto skip_rhs = exec_program(
      "function noisy() { print(\"side\"); return 1; }\n"
      "x = 1 || noisy(); y = 0 && noisy();\n"
      "print(x); print(y);");
  CHECK(skip_rhs.output == "1\n0\n");

  CHECK(exec_program("print(2 && 3);").output == "1\n");
  CHECK(exec_program("print(0 || 7);").output == "1\n");
  CHECK(exec_program("print(0 || 0);").output == "0\n");
  CHECK(exec_program("x = 1 && \"s\";").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = 0 && nosuchname; print(x);").output == "0\n");
}

TEST_CASE("boolean encoding holds for random numeric comparisons") {
  const BinaryOp ops[] = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt, BinaryOp::Gt,
                          BinaryOp::Le, BinaryOp::Ge, BinaryOp::And, BinaryOp::Or};
  for (int round = 0; round < 500; ++round) {
    Value l = testsupport::rand_between(0, 1) ? vint(testsupport::rand_between(-50, 50))
                                              : vfloat(testsupport::rand_between(-50, 50) / 4.0);
    Value r = testsupport::rand_between(0, 1) ? vint(testsupport::rand_between(-50, 50))
                                              : vfloat(testsupport::rand_between(-50, 50) / 4.0);
    for (BinaryOp op : ops) {
      Value v = eval_binary(op, l, r);
      REQUIRE(v.kind() == ValueKind::Int);
      bool zero_or_one = v.as_int() == 0 || v.as_int() == 1;
      REQUIRE(zero_or_one);
    }
  }
}

TEST_CASE("print formatting") {
  CHECK(exec_program("print(1.0);").output == "1.0\n");
  CHECK(exec_program("print(0.5);").output == "0.5\n");
  // Unary minus is 0 - x, so -0.0 the literal is positive zero; a genuine
  // negative zero still renders with its sign.
  CHECK(exec_program("print(-0.0);").output == "0.0\n");
  CHECK(exec_program("print((0 - 1.0) * 0.0);").output == "-0.0\n");
  CHECK(format_float(-0.0) == "-0.0");
  CHECK(exec_program("print(1.0 / 3.0);").output == "0.3333333333333333\n");
  CHECK(exec_program("print(-42);").output == "-42\n");
  CHECK(exec_program("print(\"raw text\");").output == "raw text\n");
  CHECK(exec_program("a = []; print(a);").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("function f() {} print(f);").error == RuntimeErrorKind::TypeError);
}

TEST_CASE("name errors") {
  CHECK(exec_program("print(nope);").error == RuntimeErrorKind::UndefinedName);
  CHECK(exec_program("x = nope + 1;").error == RuntimeErrorKind::UndefinedName);
  CHECK(exec_program("nope[0] = 1;").error == RuntimeErrorKind::UndefinedName);
  CHECK(exec_program("x = nope();").error == RuntimeErrorKind::UndefinedFunction);
}

TEST_CASE("call semantics") {
  CHECK(exec_program("function f(a, b) { return a + b; } print(f(1));").error ==
        RuntimeErrorKind::ArityMismatch);
  CHECK(exec_program("x = 5; y = x();").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = len(1, 2);").error == RuntimeErrorKind::ArityMismatch);

  // Functions are first-class: values retrievable from variables.
  CHECK(exec_program("function f(n) { return n * 2; } g = f; print(g(21));").output ==
        "42\n");

  // Redefinition replaces; calling before definition fails.
  CHECK(exec_program(
            "function f() { return 1; } function f() { return 2; } print(f());")
            .output == "2\n");
  CHECK(exec_program("x = f(); function f() { return 1; }").error ==
        RuntimeErrorKind::UndefinedFunction);
}

TEST_CASE("falling off the end and bare return both give 0") {
  CHECK(exec_program("function f() { x = 1; } print(f());").output == "0\n");
  CHECK(exec_program("function f() { return; } print(f());").output == "0\n");
}

TEST_CASE("a top-level return stops the program") {
  CHECK(exec_program("print(1); return; print(2);").output == "1\n");
}

TEST_CASE("index assignment type rules") {
  CHECK(exec_program("s = \"ab\"; s[0] = \"c\";").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("x = 5; x[0] = 1;").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("a = []; a[1.5] = 1;").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("a = []; x = a[1.5];").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("s = \"abc\"; x = s[1.5];").error == RuntimeErrorKind::TypeError);
}

TEST_CASE("indexing non-indexable values") {
  CHECK(exec_program("x = 5; y = x[0];").error == RuntimeErrorKind::TypeError);
  CHECK(exec_program("function f() {} y = f[0];").error == RuntimeErrorKind::TypeError);
}

TEST_CASE("step budget") {
  ExecLimits tight;
  tight.max_steps = 1000;
  auto result = exec_program("i = 0; while (i >= 0) { i = i + 1; }", tight);
  REQUIRE(result.error.has_value());
  CHECK(*result.error == RuntimeErrorKind::StepBudgetExceeded);

  // Programs without loops finish in O(size) steps.
  ExecLimits small;
  small.max_steps = 10'000;
  CHECK(!exec_program("a = 1; b = a + 2; c = b * 3; print(c);", small).error);
}

TEST_CASE("recursion limit") {
  ExecLimits limits;
  limits.max_recursion = 100;
  auto result = exec_program("function f(n) { return f(n + 1); } x = f(0);", limits);
  REQUIRE(result.error.has_value());
  CHECK(*result.error == RuntimeErrorKind::RecursionLimit);

  limits.max_recursion = 100;
  CHECK(exec_program(
            "function f(n) { if (n == 0) { return 0; } return f(n - 1); } print(f(99));",
            limits)
            .output == "0\n");
}

TEST_CASE("output limit raises OutputOverflow") {
  ExecLimits limits;
  limits.max_output_bytes = 64;
  Program program = parse_program(tokenize("i = 0; while (i < 100) { print(\"xxxxxxxx\"); i = i + 1; }"));
  std::string sink;
  Interpreter interp(program, sink, limits);
  CHECK_THROWS_AS(interp.execute_top_level(), OutputOverflow);
  CHECK(sink.size() == 64);  // truncated, partially populated
}

TEST_CASE("limits must be strictly positive") {
  Program program = parse_program(tokenize("x = 1;"));
  std::string sink;
  ExecLimits limits;
  limits.max_steps = 0;
  CHECK_THROWS_AS(Interpreter(program, sink, limits), std::invalid_argument);
  limits = ExecLimits{};
  limits.max_recursion = -1;
  CHECK_THROWS_AS(Interpreter(program, sink, limits), std::invalid_argument);
}

TEST_CASE("execution is deterministic") {
  const std::string source =
      "a = []; i = 0;\n"
      "while (i < 50) { a[i] = i * i % 7; i = i + 1; }\n"
      "j = 0; while (j < 50) { print(a[j]); j = j + 1; }";
  auto first = exec_program(source);
  auto second = exec_program(source);
  CHECK(first.output == second.output);
  CHECK(!first.error);
}

TEST_CASE("unary minus equals zero-minus on random numeric expressions") {
  for (int round = 0; round < 200; ++round) {
    long a = testsupport::rand_between(-50, 50);
    long b = testsupport::rand_between(-50, 50);
    long c = testsupport::rand_between(1, 9);
    std::string expr = "(" + std::to_string(a) + " + " + std::to_string(b) + " * " +
                       std::to_string(c) + ")";
    auto neg = exec_program("print(-" + expr + ");");
    auto zero_minus = exec_program("print(0 - " + expr + ");");
    CHECK(neg.output == zero_minus.output);
  }
}
