#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>

namespace pylang {

struct FunctionInfo;
struct ArrayObject;

using StrRef = std::shared_ptr<const std::string>;
using ArrayRef = std::shared_ptr<ArrayObject>;
using FuncRef = std::shared_ptr<const FunctionInfo>;

enum class ValueKind { Int = 0, Float, Str, Array, Func };

const char* to_string(ValueKind kind);

// A runtime value. Ints are arbitrary precision; strings are immutable and
// shared; arrays are shared by reference so mutations inside a callee are
// visible to the caller.
struct Value {
  std::variant<mpz_class, double, StrRef, ArrayRef, FuncRef> data;

  Value() : data(mpz_class(0)) {}
  explicit Value(mpz_class v) : data(std::move(v)) {}
  explicit Value(double v) : data(v) {}
  explicit Value(StrRef v) : data(std::move(v)) {}
  explicit Value(ArrayRef v) : data(std::move(v)) {}
  explicit Value(FuncRef v) : data(std::move(v)) {}

  static Value from_int(long v) { return Value(mpz_class(v)); }
  static Value str(std::string s) {
    return Value(std::make_shared<const std::string>(std::move(s)));
  }
  static Value array() { return Value(std::make_shared<ArrayObject>()); }

  ValueKind kind() const { return static_cast<ValueKind>(data.index()); }
  bool is(ValueKind k) const { return kind() == k; }

  const mpz_class& as_int() const { return std::get<mpz_class>(data); }
  double as_float() const { return std::get<double>(data); }
  const std::string& as_str() const { return *std::get<StrRef>(data); }
  const ArrayRef& as_array() const { return std::get<ArrayRef>(data); }
  const FuncRef& as_func() const { return std::get<FuncRef>(data); }
};

// Sparse integer-keyed array. std::map keeps key comparisons exact for
// arbitrary-precision keys and iteration deterministic.
struct ArrayObject {
  std::map<mpz_class, Value> entries;
};

// Reading an index that was never assigned yields this fixed value.
const mpz_class& sentinel_int();
Value sentinel_value();

std::string format_int(const mpz_class& v);
// Shortest decimal form that round-trips, with at least one fractional digit
// for finite integral values ("1.0", "0.5", "-0.0"; "inf"/"nan" otherwise).
std::string format_float(double v);

// How `print` renders a value. Only Int/Float/Str are printable; callers are
// expected to reject Array/Func before calling this.
std::string to_display_string(const Value& v);

std::string escape_string(const std::string& s);

}  // namespace pylang
