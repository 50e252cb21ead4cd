#include "pylang/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace pylang {

const char* to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Int: return "int";
    case ValueKind::Float: return "float";
    case ValueKind::Str: return "str";
    case ValueKind::Array: return "array";
    case ValueKind::Func: return "function";
  }
  return "unknown";
}

const mpz_class& sentinel_int() {
  static const mpz_class sentinel = -mpz_class("9223372036854775807");
  return sentinel;
}

Value sentinel_value() { return Value(sentinel_int()); }

std::string format_int(const mpz_class& v) { return v.get_str(); }

std::string format_float(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string to_display_string(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Int: return format_int(v.as_int());
    case ValueKind::Float: return format_float(v.as_float());
    case ValueKind::Str: return v.as_str();
    default: return std::string("<") + to_string(v.kind()) + ">";
  }
}

std::string escape_string(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\x%02x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

}  // namespace pylang
