#pragma once

// Arithmetic expressions in the two variables x and y.
//
// Grammar (standard precedence, ^ right-associative and tightest):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//   func   := sin | cos | exp | log | sqrt

#include <memory>
#include <string>
#include <string_view>

namespace rkgl {

enum class NodeKind { Constant, VarX, VarY, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Log, Sqrt };

int arity(NodeKind kind);

class Expr {
 public:
  struct Node;

  /// Constant zero.
  Expr();

  static Expr constant(double value);
  static Expr x();
  static Expr y();
  static Expr unary(NodeKind kind, Expr operand);
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs);

  NodeKind kind() const;
  double value() const;  // Constant only
  Expr child(int i) const;

  bool depends_on_y() const;
  const Node& node() const { return *node_; }

  double operator()(double x, double y) const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
  bool has_y = false;
};

Expr parse(std::string_view source);

double eval(const Expr& e, double x, double y);

/// Symbolic partial derivative with respect to y. Throws UnsupportedDerivative
/// when an exponent depends on y.
Expr diff_y(const Expr& e);

/// Fully parenthesized text that parses back to an equal tree.
std::string to_string(const Expr& e);

}  // namespace rkgl
