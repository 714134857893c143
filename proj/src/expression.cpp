#include "rkgl/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "rkgl/errors.hpp"

namespace rkgl {

int arity(NodeKind kind) {
  switch (kind) {
    case NodeKind::Constant:
    case NodeKind::VarX:
    case NodeKind::VarY:
      return 0;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow:
      return 2;
    default:
      return 1;
  }
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::x() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::VarX;
  return Expr(std::move(n));
}

Expr Expr::y() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::VarY;
  n->has_y = true;
  return Expr(std::move(n));
}

Expr Expr::unary(NodeKind kind, Expr operand) {
  if (arity(kind) != 1) throw InvalidArgument("Expr::unary: kind is not unary");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->has_y = operand.node_->has_y;
  n->lhs = std::move(operand.node_);
  return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
  if (arity(kind) != 2) throw InvalidArgument("Expr::binary: kind is not binary");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->has_y = lhs.node_->has_y || rhs.node_->has_y;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
bool Expr::depends_on_y() const { return node_->has_y; }

Expr Expr::child(int i) const {
  if (i < 0 || i >= arity(node_->kind)) throw InvalidArgument("Expr::child: index out of range");
  return Expr(i == 0 ? node_->lhs : node_->rhs);
}

double Expr::operator()(double x, double y) const { return eval(*this, x, y); }

namespace {

double eval_node(const Expr::Node& n, double x, double y) {
  switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::VarX: return x;
    case NodeKind::VarY: return y;
    case NodeKind::Neg: return -eval_node(*n.lhs, x, y);
    case NodeKind::Add: return eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y);
    case NodeKind::Sub: return eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y);
    case NodeKind::Mul: return eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y);
    case NodeKind::Div: return eval_node(*n.lhs, x, y) / eval_node(*n.rhs, x, y);
    case NodeKind::Pow: return std::pow(eval_node(*n.lhs, x, y), eval_node(*n.rhs, x, y));
    case NodeKind::Sin: return std::sin(eval_node(*n.lhs, x, y));
    case NodeKind::Cos: return std::cos(eval_node(*n.lhs, x, y));
    case NodeKind::Exp: return std::exp(eval_node(*n.lhs, x, y));
    case NodeKind::Log: return std::log(eval_node(*n.lhs, x, y));
    case NodeKind::Sqrt: return std::sqrt(eval_node(*n.lhs, x, y));
  }
  return std::nan("");
}

// Recursive descent over a string_view; `pos_` is always the offset of the
// next unread character.
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_ws();
    if (!at_end()) {
      if (src_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(NodeKind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(NodeKind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(NodeKind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = Expr::binary(NodeKind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::unary(NodeKind::Neg, factor());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::binary(NodeKind::Pow, base, factor());
    return base;
  }

  Expr atom() {
    skip_ws();
    if (at_end()) throw ParseError("expected operand", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      skip_ws();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError(std::string("expected operand, found '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (!at_end() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (!at_end() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (!at_end() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent", save);
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start);
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return Expr::x();
    if (name == "y") return Expr::y();

    NodeKind kind;
    if (name == "sin") kind = NodeKind::Sin;
    else if (name == "cos") kind = NodeKind::Cos;
    else if (name == "exp") kind = NodeKind::Exp;
    else if (name == "log") kind = NodeKind::Log;
    else if (name == "sqrt") kind = NodeKind::Sqrt;
    else throw UnknownIdentifier(std::string(name), start);

    if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
    Expr arg = expr();
    if (!accept(')')) throw ParseError("expected ')'", pos_);
    return Expr::unary(kind, arg);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Constructors with constant folding, used when building derivatives.
bool is_const(const Expr& e, double v) {
  return e.kind() == NodeKind::Constant && e.value() == v;
}

Expr fold(Expr e) {
  if (e.depends_on_y()) return e;
  bool all_const = true;
  for (int i = 0; i < arity(e.kind()); ++i) all_const &= e.child(i).kind() == NodeKind::Constant;
  if (arity(e.kind()) == 0 || !all_const) return e;
  const double v = eval(e, 0.0, 0.0);
  return std::isfinite(v) ? Expr::constant(v) : e;
}

Expr neg(Expr a) {
  if (a.kind() == NodeKind::Neg) return a.child(0);
  return fold(Expr::unary(NodeKind::Neg, std::move(a)));
}

Expr add(Expr a, Expr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return fold(Expr::binary(NodeKind::Add, std::move(a), std::move(b)));
}

Expr sub(Expr a, Expr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  return fold(Expr::binary(NodeKind::Sub, std::move(a), std::move(b)));
}

Expr mul(Expr a, Expr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return fold(Expr::binary(NodeKind::Mul, std::move(a), std::move(b)));
}

Expr div(Expr a, Expr b) {
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  return fold(Expr::binary(NodeKind::Div, std::move(a), std::move(b)));
}

Expr pow(Expr a, Expr b) {
  if (is_const(b, 1.0)) return a;
  return fold(Expr::binary(NodeKind::Pow, std::move(a), std::move(b)));
}

Expr fn(NodeKind kind, Expr a) { return fold(Expr::unary(kind, std::move(a))); }

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Constant: {
      char buf[64];
      const double v = e.value();
      auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(v));
      if (std::signbit(v)) out += "(-";
      out.append(buf, res.ptr);
      if (std::signbit(v)) out += ')';
      return;
    }
    case NodeKind::VarX: out += 'x'; return;
    case NodeKind::VarY: out += 'y'; return;
    case NodeKind::Neg:
      out += "(-";
      print(e.child(0), out);
      out += ')';
      return;
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Log:
    case NodeKind::Sqrt: {
      static constexpr const char* names[] = {"sin", "cos", "exp", "log", "sqrt"};
      out += names[static_cast<int>(e.kind()) - static_cast<int>(NodeKind::Sin)];
      out += '(';
      print(e.child(0), out);
      out += ')';
      return;
    }
    default: {
      static constexpr char ops[] = {'+', '-', '*', '/', '^'};
      out += '(';
      print(e.child(0), out);
      out += ops[static_cast<int>(e.kind()) - static_cast<int>(NodeKind::Add)];
      print(e.child(1), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

double eval(const Expr& e, double x, double y) {
  return eval_node(e.node(), x, y);
}

Expr diff_y(const Expr& e) {
  if (!e.depends_on_y()) return Expr::constant(0.0);
  switch (e.kind()) {
    case NodeKind::VarY:
      return Expr::constant(1.0);
    case NodeKind::Neg:
      return neg(diff_y(e.child(0)));
    case NodeKind::Add:
      return add(diff_y(e.child(0)), diff_y(e.child(1)));
    case NodeKind::Sub:
      return sub(diff_y(e.child(0)), diff_y(e.child(1)));
    case NodeKind::Mul: {
      const Expr u = e.child(0), v = e.child(1);
      return add(mul(diff_y(u), v), mul(u, diff_y(v)));
    }
    case NodeKind::Div: {
      const Expr u = e.child(0), v = e.child(1);
      if (!v.depends_on_y()) return div(diff_y(u), v);
      return div(sub(mul(diff_y(u), v), mul(u, diff_y(v))), pow(v, Expr::constant(2.0)));
    }
    case NodeKind::Pow: {
      const Expr u = e.child(0), c = e.child(1);
      if (c.depends_on_y()) throw UnsupportedDerivative("diff_y: exponent depends on y in " + to_string(e));
      return mul(mul(c, pow(u, sub(c, Expr::constant(1.0)))), diff_y(u));
    }
    case NodeKind::Sin: {
      const Expr u = e.child(0);
      return mul(fn(NodeKind::Cos, u), diff_y(u));
    }
    case NodeKind::Cos: {
      const Expr u = e.child(0);
      return mul(neg(fn(NodeKind::Sin, u)), diff_y(u));
    }
    case NodeKind::Exp:
      return mul(e, diff_y(e.child(0)));
    case NodeKind::Log: {
      const Expr u = e.child(0);
      return div(diff_y(u), u);
    }
    case NodeKind::Sqrt:
      return div(diff_y(e.child(0)), mul(Expr::constant(2.0), e));
    default:
      return Expr::constant(0.0);
  }
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace rkgl
