#include "pylang/lexer.hpp"

#include <array>
#include <cctype>
#include <sstream>

#include "pylang/value.hpp"

namespace pylang {

namespace {

constexpr std::array<std::string_view, 6> kKeywords = {
    "function", "return", "print", "if", "else", "while",
};

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

bool is_ident_start(char c) {
  return c == '_' || std::isalpha(static_cast<unsigned char>(c));
}

bool is_ident_part(char c) {
  return c == '_' || std::isalnum(static_cast<unsigned char>(c));
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Cursor {
  const std::string& src;
  size_t i = 0;
  int line = 1;
  int column = 1;

  bool done() const { return i >= src.size(); }
  char peek(size_t ahead = 0) const {
    return i + ahead < src.size() ? src[i + ahead] : '\0';
  }
  char advance() {
    char c = src[i++];
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    return c;
  }
  Span span() const { return Span{line, column}; }
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "KEYWORD";
    case TokenKind::Identifier: return "IDENTIFIER";
    case TokenKind::Number: return "NUMBER";
    case TokenKind::String: return "STRING";
    case TokenKind::Operator: return "OPERATOR";
    case TokenKind::Punct: return "PUNCT";
    case TokenKind::EndOfInput: return "EOF";
  }
  return "UNKNOWN";
}

std::vector<Token> tokenize(const std::string& source) {
  std::vector<Token> out;
  Cursor cur{source};

  auto push = [&](TokenKind kind, std::string text, Span at,
                  decltype(Token::value) value = std::monostate{}) {
    out.push_back(Token{kind, std::move(text), std::move(value), at.line, at.column});
  };

  while (!cur.done()) {
    char c = cur.peek();

    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }

    Span at = cur.span();

    if (c == '#') throw LexError("comments are not supported", at);
    if (c == '/' && (cur.peek(1) == '/' || cur.peek(1) == '*'))
      throw LexError("comments are not supported", at);

    if (is_ident_start(c)) {
      std::string word;
      while (!cur.done() && is_ident_part(cur.peek())) word += cur.advance();
      push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, word, at);
      continue;
    }

    if (is_digit(c)) {
      std::string text;
      while (!cur.done() && is_digit(cur.peek())) text += cur.advance();
      if (cur.peek() == '.') {
        if (!is_digit(cur.peek(1)))
          throw LexError("malformed number: expected a digit after '.'", cur.span());
        text += cur.advance();  // '.'
        while (!cur.done() && is_digit(cur.peek())) text += cur.advance();
        push(TokenKind::Number, text, at, std::stod(text));
      } else {
        push(TokenKind::Number, text, at, mpz_class(text, 10));
      }
      continue;
    }

    if (c == '"') {
      std::string text;
      std::string decoded;
      text += cur.advance();
      bool closed = false;
      while (!cur.done()) {
        char ch = cur.peek();
        if (ch == '"') {
          text += cur.advance();
          closed = true;
          break;
        }
        if (ch == '\\') {
          Span esc_at = cur.span();
          text += cur.advance();
          if (cur.done()) break;  // reported as unterminated below
          char e = cur.advance();
          text += e;
          switch (e) {
            case 'n': decoded += '\n'; break;
            case 't': decoded += '\t'; break;
            case '\\': decoded += '\\'; break;
            case '"': decoded += '"'; break;
            default:
              throw LexError(std::string("invalid escape sequence '\\") + e + "'", esc_at);
          }
          continue;
        }
        decoded += ch;
        text += cur.advance();
      }
      if (!closed) throw LexError("unterminated string literal", at);
      push(TokenKind::String, text, at, decoded);
      continue;
    }

    // Two-character operators take precedence over their one-character
    // prefixes; a lone '&', '|', or '!' is not part of the alphabet.
    char d = cur.peek(1);
    auto push_op = [&](int len) {
      std::string text;
      for (int k = 0; k < len; ++k) text += cur.advance();
      push(TokenKind::Operator, text, at);
    };
    if ((c == '=' && d == '=') || (c == '!' && d == '=') || (c == '<' && d == '=') ||
        (c == '>' && d == '=') || (c == '&' && d == '&') || (c == '|' && d == '|')) {
      push_op(2);
      continue;
    }
    if (c == '=' || c == '<' || c == '>' || c == '+' || c == '-' || c == '*' ||
        c == '/' || c == '%') {
      push_op(1);
      continue;
    }
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
        c == ',' || c == ';') {
      std::string text(1, cur.advance());
      push(TokenKind::Punct, text, at);
      continue;
    }

    std::string shown = escape_string(std::string(1, c));
    throw LexError("unexpected character '" + shown + "'", at);
  }

  push(TokenKind::EndOfInput, "", cur.span());
  return out;
}

std::string dump_tokens(const std::vector<Token>& tokens) {
  std::ostringstream os;
  for (const auto& t : tokens) {
    os << t.line << ':' << t.column << ' ' << to_string(t.kind);
    if (!t.text.empty()) os << ' ' << t.text;
    os << '\n';
  }
  return os.str();
}

}  // namespace pylang
