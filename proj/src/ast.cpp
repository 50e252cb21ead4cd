#include "pylang/ast.hpp"

#include <string>

#include "pylang/value.hpp"

namespace pylang {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string pad(int indent) { return std::string(2 * static_cast<size_t>(indent), ' '); }

void emit_expr(std::string& out, const Expr& e, int indent);
void emit_stmt(std::string& out, const Stmt& s, int indent);

void emit_block(std::string& out, const char* head, const Block& block, int indent) {
  out += pad(indent) + "(" + head;
  for (const auto& stmt : block.stmts) {
    out += '\n';
    emit_stmt(out, *stmt, indent + 1);
  }
  out += ')';
}

void emit_expr(std::string& out, const Expr& e, int indent) {
  std::visit(
      overloaded{
          [&](const NumberLit& n) {
            out += pad(indent) + "(number ";
            if (std::holds_alternative<mpz_class>(n.value))
              out += format_int(std::get<mpz_class>(n.value));
            else
              out += format_float(std::get<double>(n.value));
            out += ')';
          },
          [&](const StringLit& s) {
            out += pad(indent) + "(string \"" + escape_string(s.value) + "\")";
          },
          [&](const VarRef& v) { out += pad(indent) + "(var " + v.name + ")"; },
          [&](const ArrayLit& a) {
            out += pad(indent) + "(array";
            for (const auto& item : a.items) {
              out += '\n';
              emit_expr(out, *item, indent + 1);
            }
            out += ')';
          },
          [&](const IndexExpr& ix) {
            out += pad(indent) + "(index " + ix.base + "\n";
            emit_expr(out, *ix.subscript, indent + 1);
            out += ')';
          },
          [&](const CallExpr& c) {
            out += pad(indent) + "(call " + c.callee;
            for (const auto& arg : c.args) {
              out += '\n';
              emit_expr(out, *arg, indent + 1);
            }
            out += ')';
          },
          [&](const BinaryExpr& b) {
            out += pad(indent) + "(binary " + to_string(b.op) + "\n";
            emit_expr(out, *b.lhs, indent + 1);
            out += '\n';
            emit_expr(out, *b.rhs, indent + 1);
            out += ')';
          },
      },
      e.node);
}

void emit_stmt(std::string& out, const Stmt& s, int indent) {
  std::visit(
      overloaded{
          [&](const AssignStmt& a) {
            if (a.index) {
              out += pad(indent) + "(index-assign " + a.target + "\n";
              emit_expr(out, *a.index, indent + 1);
              out += '\n';
            } else {
              out += pad(indent) + "(assign " + a.target + "\n";
            }
            emit_expr(out, *a.value, indent + 1);
            out += ')';
          },
          [&](const IfStmt& i) {
            out += pad(indent) + "(if\n";
            emit_expr(out, *i.cond, indent + 1);
            out += '\n';
            emit_block(out, "then", i.then_block, indent + 1);
            if (i.else_block) {
              out += '\n';
              emit_block(out, "else", *i.else_block, indent + 1);
            }
            out += ')';
          },
          [&](const WhileStmt& w) {
            out += pad(indent) + "(while\n";
            emit_expr(out, *w.cond, indent + 1);
            out += '\n';
            emit_block(out, "body", w.body, indent + 1);
            out += ')';
          },
          [&](const ReturnStmt& r) {
            if (!r.value) {
              out += pad(indent) + "(return)";
            } else {
              out += pad(indent) + "(return\n";
              emit_expr(out, *r.value, indent + 1);
              out += ')';
            }
          },
          [&](const PrintStmt& p) {
            out += pad(indent) + "(print\n";
            emit_expr(out, *p.value, indent + 1);
            out += ')';
          },
          [&](const ExprStmt& e) {
            out += pad(indent) + "(expr\n";
            emit_expr(out, *e.expr, indent + 1);
            out += ')';
          },
      },
      s.node);
}

}  // namespace

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string dump_ast(const Program& program) {
  std::string out = "(program";
  for (const auto& item : program.items) {
    out += '\n';
    if (std::holds_alternative<std::shared_ptr<const FunctionInfo>>(item.node)) {
      const auto& fn = *std::get<std::shared_ptr<const FunctionInfo>>(item.node);
      out += pad(1) + "(function " + fn.name + " (params";
      for (const auto& p : fn.params) out += ' ' + p;
      out += ')';
      for (const auto& stmt : fn.body.stmts) {
        out += '\n';
        emit_stmt(out, *stmt, 2);
      }
      out += ')';
    } else {
      emit_stmt(out, *std::get<StmtPtr>(item.node), 1);
    }
  }
  out += ")\n";
  return out;
}

std::string dump_ast(const Expr& expr) {
  std::string out;
  emit_expr(out, expr, 0);
  out += '\n';
  return out;
}

}  // namespace pylang
