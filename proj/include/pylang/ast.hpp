#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pylang/diag.hpp"

namespace pylang {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Gt, Le, Ge, And, Or };

const char* to_string(BinaryOp op);

struct NumberLit {
  std::variant<mpz_class, double> value;
};
struct StringLit {
  std::string value;
};
struct VarRef {
  std::string name;
};
struct ArrayLit {
  std::vector<ExprPtr> items;
};
// Subscripts apply to plain names only; chained indexing is a parse error.
struct IndexExpr {
  std::string base;
  ExprPtr subscript;
};
struct CallExpr {
  std::string callee;
  std::vector<ExprPtr> args;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  Span span;
  std::variant<NumberLit, StringLit, VarRef, ArrayLit, IndexExpr, CallExpr, BinaryExpr> node;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
  std::vector<StmtPtr> stmts;
};

// `index` is null for a plain `name = expr;` assignment.
struct AssignStmt {
  std::string target;
  ExprPtr index;
  ExprPtr value;
};
struct IfStmt {
  ExprPtr cond;
  Block then_block;
  std::optional<Block> else_block;
};
struct WhileStmt {
  ExprPtr cond;
  Block body;
};
struct ReturnStmt {
  ExprPtr value;  // null for bare `return;`, which yields 0
};
struct PrintStmt {
  ExprPtr value;
};
struct ExprStmt {
  ExprPtr expr;
};

struct Stmt {
  Span span;
  std::variant<AssignStmt, IfStmt, WhileStmt, ReturnStmt, PrintStmt, ExprStmt> node;
};

// Shared with Func values so a function value stays alive even if it escapes
// the program that defined it.
struct FunctionInfo {
  std::string name;
  std::vector<std::string> params;
  Block body;
  Span span;
};

struct Program {
  struct Item {
    std::variant<std::shared_ptr<const FunctionInfo>, StmtPtr> node;
  };
  // Function definitions and top-level statements in source order.
  std::vector<Item> items;
};

// S-expression dump, one node per line, indented two spaces per level.
// Stable across runs; used by `check --ast` and snapshot tests.
std::string dump_ast(const Program& program);
std::string dump_ast(const Expr& expr);

}  // namespace pylang
