#include "pylang/parser.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <utility>

namespace pylang {

namespace {

// Deep enough for any real program; prevents adversarial input from
// exhausting the native stack during descent.
constexpr int kMaxNesting = 2000;

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::EndOfInput)
      throw ParseError("token stream must end with end-of-input", Span{},
                       "end of input", "");
  }

  Program program() {
    Program prog;
    while (!at_end()) {
      if (check(TokenKind::Keyword, "function")) {
        prog.items.push_back(Program::Item{function_def()});
      } else {
        prog.items.push_back(Program::Item{statement()});
      }
    }
    return prog;
  }

  Expr expression_only() {
    ExprPtr e = expression();
    if (!at_end()) fail("end of input");
    return std::move(*e);
  }

 private:
  const std::vector<Token>& toks_;
  size_t pos_ = 0;
  int depth_ = 0;

  struct DepthGuard {
    Parser& parser;
    explicit DepthGuard(Parser& p, Span span) : parser(p) {
      if (++parser.depth_ > kMaxNesting)
        throw ParseError("nesting too deep", span, "shallower nesting", "");
    }
    ~DepthGuard() { --parser.depth_; }
  };

  const Token& peek(size_t ahead = 0) const {
    size_t p = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[p];
  }
  bool at_end() const { return peek().kind == TokenKind::EndOfInput; }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (t.kind != TokenKind::EndOfInput) ++pos_;
    return t;
  }
  bool check(TokenKind kind, std::string_view text) const { return peek().is(kind, text); }
  bool match(TokenKind kind, std::string_view text) {
    if (check(kind, text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::EndOfInput) return "end of input";
    return "'" + t.text + "'";
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError("expected " + expected + ", found " + describe(t), t.span(),
                     expected, t.text);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& message,
                            const std::string& expected) const {
    throw ParseError(message, t.span(), expected, t.text);
  }

  const Token& expect(TokenKind kind, std::string_view text, const std::string& what) {
    if (!check(kind, text)) fail(what);
    return advance();
  }

  template <class Node>
  static ExprPtr make_expr(Span span, Node&& node) {
    auto e = std::make_unique<Expr>();
    e->span = span;
    e->node = std::forward<Node>(node);
    return e;
  }
  template <class Node>
  static StmtPtr make_stmt(Span span, Node&& node) {
    auto s = std::make_unique<Stmt>();
    s->span = span;
    s->node = std::forward<Node>(node);
    return s;
  }

  std::shared_ptr<const FunctionInfo> function_def() {
    const Token& kw = expect(TokenKind::Keyword, "function", "'function'");
    auto fn = std::make_shared<FunctionInfo>();
    fn->span = kw.span();
    if (peek().kind != TokenKind::Identifier) fail("a function name");
    fn->name = advance().text;
    expect(TokenKind::Punct, "(", "'(' after the function name");
    if (!check(TokenKind::Punct, ")")) {
      std::set<std::string> seen;
      while (true) {
        if (peek().kind != TokenKind::Identifier) fail("a parameter name");
        const Token& param = advance();
        if (!seen.insert(param.text).second)
          fail_at(param, "duplicate parameter '" + param.text + "'",
                  "distinct parameter names");
        fn->params.push_back(param.text);
        if (!match(TokenKind::Punct, ",")) break;
      }
    }
    expect(TokenKind::Punct, ")", "')' after the parameter list");
    fn->body = block();
    return fn;
  }

  Block block() {
    DepthGuard guard(*this, peek().span());
    expect(TokenKind::Punct, "{", "'{'");
    Block b;
    while (!check(TokenKind::Punct, "}")) {
      if (at_end()) fail("'}'");
      b.stmts.push_back(statement());
    }
    advance();  // '}'
    return b;
  }

  StmtPtr statement() {
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") return if_stmt();
      if (t.text == "while") return while_stmt();
      if (t.text == "return") return return_stmt();
      if (t.text == "print") return print_stmt();
      if (t.text == "function")
        fail_at(t, "function definitions are only allowed at the top level",
                "a statement");
      fail_at(t, "unexpected '" + t.text + "'", "a statement");
    }
    // for/break/continue lex as identifiers; reject them up front so the
    // diagnostic names the unsupported construct instead of a stray token.
    if (t.kind == TokenKind::Identifier &&
        (t.text == "for" || t.text == "break" || t.text == "continue")) {
      fail_at(t, "'" + t.text + "' is not supported", "a statement");
    }
    return assign_or_expr_stmt();
  }

  StmtPtr if_stmt() {
    const Token& kw = advance();
    expect(TokenKind::Punct, "(", "'(' after 'if'");
    ExprPtr cond = expression();
    expect(TokenKind::Punct, ")", "')' after the condition");
    Block then_block = block();
    std::optional<Block> else_block;
    if (match(TokenKind::Keyword, "else")) {
      if (check(TokenKind::Keyword, "if"))
        fail_at(peek(), "expected '{' after 'else' ('else if' is not supported; nest the "
                        "'if' inside braces)",
                "'{'");
      else_block = block();
    }
    IfStmt node{std::move(cond), std::move(then_block), std::move(else_block)};
    return make_stmt(kw.span(), std::move(node));
  }

  StmtPtr while_stmt() {
    const Token& kw = advance();
    expect(TokenKind::Punct, "(", "'(' after 'while'");
    ExprPtr cond = expression();
    expect(TokenKind::Punct, ")", "')' after the condition");
    Block body = block();
    return make_stmt(kw.span(), WhileStmt{std::move(cond), std::move(body)});
  }

  StmtPtr return_stmt() {
    const Token& kw = advance();
    ExprPtr value;
    if (!check(TokenKind::Punct, ";")) value = expression();
    expect(TokenKind::Punct, ";", "';' after 'return'");
    return make_stmt(kw.span(), ReturnStmt{std::move(value)});
  }

  StmtPtr print_stmt() {
    const Token& kw = advance();
    expect(TokenKind::Punct, "(", "'(' after 'print'");
    ExprPtr value = expression();
    expect(TokenKind::Punct, ")", "')' after the print argument");
    expect(TokenKind::Punct, ";", "';' after 'print(...)'");
    return make_stmt(kw.span(), PrintStmt{std::move(value)});
  }

  // statement := expr ';' | target '=' expr ';' where target is a name or
  // name[subscript]. Assignment is a statement, so `a = b = c;` is an error.
  StmtPtr assign_or_expr_stmt() {
    Span start = peek().span();
    ExprPtr e = expression();
    if (match(TokenKind::Operator, "=")) {
      AssignStmt assign;
      if (std::holds_alternative<VarRef>(e->node)) {
        assign.target = std::get<VarRef>(e->node).name;
      } else if (std::holds_alternative<IndexExpr>(e->node)) {
        auto& ix = std::get<IndexExpr>(e->node);
        assign.target = ix.base;
        assign.index = std::move(ix.subscript);
      } else {
        throw ParseError("invalid assignment target", e->span,
                         "a name or name[index] on the left of '='", "=");
      }
      assign.value = expression();
      expect(TokenKind::Punct, ";", "';' after the assignment");
      return make_stmt(start, std::move(assign));
    }
    expect(TokenKind::Punct, ";", "';' after the expression");
    return make_stmt(start, ExprStmt{std::move(e)});
  }

  // Precedence levels, lowest first: 0 logical, 1 relational, 2 additive,
  // 3 multiplicative; level 4 hands off to unary/primary.
  static bool op_at_level(int level, const Token& t) {
    if (t.kind != TokenKind::Operator) return false;
    const std::string& s = t.text;
    switch (level) {
      case 0: return s == "&&" || s == "||";
      case 1:
        return s == "==" || s == "!=" || s == "<" || s == ">" || s == "<=" || s == ">=";
      case 2: return s == "+" || s == "-";
      case 3: return s == "*" || s == "/" || s == "%";
      default: return false;
    }
  }

  static BinaryOp op_from_text(const std::string& s) {
    if (s == "+") return BinaryOp::Add;
    if (s == "-") return BinaryOp::Sub;
    if (s == "*") return BinaryOp::Mul;
    if (s == "/") return BinaryOp::Div;
    if (s == "%") return BinaryOp::Mod;
    if (s == "==") return BinaryOp::Eq;
    if (s == "!=") return BinaryOp::Ne;
    if (s == "<") return BinaryOp::Lt;
    if (s == ">") return BinaryOp::Gt;
    if (s == "<=") return BinaryOp::Le;
    if (s == ">=") return BinaryOp::Ge;
    if (s == "&&") return BinaryOp::And;
    return BinaryOp::Or;
  }

  ExprPtr expression() { return binary(0); }

  ExprPtr binary(int level) {
    if (level == 4) return unary();
    DepthGuard guard(*this, peek().span());
    ExprPtr lhs = binary(level + 1);
    while (op_at_level(level, peek())) {
      const Token& op = advance();
      ExprPtr rhs = binary(level + 1);
      lhs = make_expr(op.span(),
                      BinaryExpr{op_from_text(op.text), std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (check(TokenKind::Operator, "-")) {
      const Token& minus = advance();
      DepthGuard guard(*this, minus.span());
      ExprPtr zero = make_expr(minus.span(), NumberLit{mpz_class(0)});
      ExprPtr operand = unary();
      return make_expr(minus.span(),
                       BinaryExpr{BinaryOp::Sub, std::move(zero), std::move(operand)});
    }
    return primary();
  }

  void reject_subscript_here(const char* what) {
    if (check(TokenKind::Punct, "["))
      fail_at(peek(), std::string("only simple names can be indexed; cannot index ") + what,
              "an operator or ';'");
  }

  ExprPtr primary() {
    DepthGuard guard(*this, peek().span());
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number: {
        advance();
        NumberLit lit{mpz_class(0)};
        if (std::holds_alternative<mpz_class>(t.value))
          lit.value = std::get<mpz_class>(t.value);
        else
          lit.value = std::get<double>(t.value);
        return make_expr(t.span(), std::move(lit));
      }
      case TokenKind::String: {
        advance();
        return make_expr(t.span(), StringLit{std::get<std::string>(t.value)});
      }
      case TokenKind::Identifier: {
        advance();
        if (match(TokenKind::Punct, "(")) {
          CallExpr call{t.text, {}};
          if (!check(TokenKind::Punct, ")")) {
            while (true) {
              call.args.push_back(expression());
              if (!match(TokenKind::Punct, ",")) break;
            }
          }
          expect(TokenKind::Punct, ")", "')' after the call arguments");
          reject_subscript_here("a call result");
          return make_expr(t.span(), std::move(call));
        }
        if (match(TokenKind::Punct, "[")) {
          ExprPtr subscript = expression();
          expect(TokenKind::Punct, "]", "']' after the index");
          if (check(TokenKind::Punct, "["))
            fail_at(peek(), "chained indexing is not supported", "an operator or ';'");
          return make_expr(t.span(), IndexExpr{t.text, std::move(subscript)});
        }
        return make_expr(t.span(), VarRef{t.text});
      }
      case TokenKind::Punct: {
        if (t.text == "(") {
          advance();
          ExprPtr inner = expression();
          expect(TokenKind::Punct, ")", "')'");
          reject_subscript_here("a parenthesized expression");
          return inner;
        }
        if (t.text == "[") {
          advance();
          ArrayLit lit;
          if (!check(TokenKind::Punct, "]")) {
            while (true) {
              lit.items.push_back(expression());
              if (!match(TokenKind::Punct, ",")) break;
            }
          }
          expect(TokenKind::Punct, "]", "']' after the array literal");
          reject_subscript_here("an array literal");
          return make_expr(t.span(), std::move(lit));
        }
        fail("an expression");
      }
      default:
        fail("an expression");
    }
  }
};

}  // namespace

Program parse_program(const std::vector<Token>& tokens) {
  return Parser(tokens).program();
}

Expr parse_expression(const std::vector<Token>& tokens) {
  return Parser(tokens).expression_only();
}

}  // namespace pylang
