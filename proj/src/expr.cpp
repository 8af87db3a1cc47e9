#include "weylbec/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "weylbec/errors.hpp"

namespace weylbec {

struct Expr::Node {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Sin, Cos };
  Kind kind;
  double value = 0.0;
  Var var = Var::kx;
  NodePtr lhs, rhs;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using NodePtr = Expr::NodePtr;

NodePtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

NodePtr variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = v;
  return n;
}

NodePtr unary(Kind k, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(operand);
  return n;
}

NodePtr binary(Kind k, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

double eval_node(const Node& n, double kx, double ky) {
  switch (n.kind) {
    case Kind::Number:
      return n.value;
    case Kind::Variable:
      return n.var == Var::kx ? kx : ky;
    case Kind::Add:
      return eval_node(*n.lhs, kx, ky) + eval_node(*n.rhs, kx, ky);
    case Kind::Sub:
      return eval_node(*n.lhs, kx, ky) - eval_node(*n.rhs, kx, ky);
    case Kind::Mul:
      return eval_node(*n.lhs, kx, ky) * eval_node(*n.rhs, kx, ky);
    case Kind::Div:
      return eval_node(*n.lhs, kx, ky) / eval_node(*n.rhs, kx, ky);
    case Kind::Neg:
      return -eval_node(*n.lhs, kx, ky);
    case Kind::Sin:
      return std::sin(eval_node(*n.lhs, kx, ky));
    case Kind::Cos:
      return std::cos(eval_node(*n.lhs, kx, ky));
  }
  return 0.0;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+'))
        lhs = binary(Kind::Add, std::move(lhs), parse_term());
      else if (consume('-'))
        lhs = binary(Kind::Sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (consume('*'))
        lhs = binary(Kind::Mul, std::move(lhs), parse_factor());
      else if (consume('/'))
        lhs = binary(Kind::Div, std::move(lhs), parse_factor());
      else
        return lhs;
    }
  }

  NodePtr parse_factor() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return unary(Kind::Neg, parse_factor());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError("expected a number, identifier or '('", pos_);
  }

  NodePtr parse_number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc())
      throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return number(value);
  }

  NodePtr parse_identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "pi") return number(std::numbers::pi);
    if (name == "kx") return variable(Var::kx);
    if (name == "ky") return variable(Var::ky);
    if (name == "sin" || name == "cos") {
      expect('(');
      NodePtr arg = parse_sum();
      expect(')');
      return unary(name == "sin" ? Kind::Sin : Kind::Cos, std::move(arg));
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }
};

bool is_const(const NodePtr& n, double v) {
  return n->kind == Kind::Number && n->value == v;
}

// Derivative-side constructors. Trees built here fold constant operands and
// drop exact 0/1 identities so that d/dkx (2 + cos kx) comes out as -sin(kx)
// rather than a ladder of zero terms.
NodePtr mk_neg(NodePtr x) {
  if (x->kind == Kind::Number) return number(-x->value);
  if (x->kind == Kind::Neg) return x->lhs;
  return unary(Kind::Neg, std::move(x));
}

NodePtr mk_add(NodePtr x, NodePtr y) {
  if (is_const(x, 0.0)) return y;
  if (is_const(y, 0.0)) return x;
  if (x->kind == Kind::Number && y->kind == Kind::Number) return number(x->value + y->value);
  return binary(Kind::Add, std::move(x), std::move(y));
}

NodePtr mk_sub(NodePtr x, NodePtr y) {
  if (is_const(y, 0.0)) return x;
  if (is_const(x, 0.0)) return mk_neg(std::move(y));
  if (x->kind == Kind::Number && y->kind == Kind::Number) return number(x->value - y->value);
  return binary(Kind::Sub, std::move(x), std::move(y));
}

NodePtr mk_mul(NodePtr x, NodePtr y) {
  if (is_const(x, 0.0) || is_const(y, 0.0)) return number(0.0);
  if (is_const(x, 1.0)) return y;
  if (is_const(y, 1.0)) return x;
  if (x->kind == Kind::Number && y->kind == Kind::Number) return number(x->value * y->value);
  return binary(Kind::Mul, std::move(x), std::move(y));
}

NodePtr mk_div(NodePtr x, NodePtr y) {
  if (is_const(x, 0.0)) return number(0.0);
  if (is_const(y, 1.0)) return x;
  if (x->kind == Kind::Number && y->kind == Kind::Number) return number(x->value / y->value);
  return binary(Kind::Div, std::move(x), std::move(y));
}

NodePtr diff_node(const NodePtr& n, Var var) {
  switch (n->kind) {
    case Kind::Number:
      return number(0.0);
    case Kind::Variable:
      return number(n->var == var ? 1.0 : 0.0);
    case Kind::Add:
      return mk_add(diff_node(n->lhs, var), diff_node(n->rhs, var));
    case Kind::Sub:
      return mk_sub(diff_node(n->lhs, var), diff_node(n->rhs, var));
    case Kind::Mul:
      return mk_add(mk_mul(diff_node(n->lhs, var), n->rhs),
                    mk_mul(n->lhs, diff_node(n->rhs, var)));
    case Kind::Div:
      return mk_div(mk_sub(mk_mul(diff_node(n->lhs, var), n->rhs),
                           mk_mul(n->lhs, diff_node(n->rhs, var))),
                    mk_mul(n->rhs, n->rhs));
    case Kind::Neg:
      return mk_neg(diff_node(n->lhs, var));
    case Kind::Sin:
      return mk_mul(unary(Kind::Cos, n->lhs), diff_node(n->lhs, var));
    case Kind::Cos:
      return mk_neg(mk_mul(unary(Kind::Sin, n->lhs), diff_node(n->lhs, var)));
  }
  return number(0.0);
}

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void print_node(const Node& n, std::string& out, int parent_prec, bool right_side) {
  int prec = precedence(n.kind);
  bool parens = prec < parent_prec ||
                (prec == parent_prec && right_side && prec <= 2);
  if (parens) out += '(';
  switch (n.kind) {
    case Kind::Number:
      out += format_number(n.value);
      break;
    case Kind::Variable:
      out += n.var == Var::kx ? "kx" : "ky";
      break;
    case Kind::Add:
      print_node(*n.lhs, out, prec, false);
      out += " + ";
      print_node(*n.rhs, out, prec, true);
      break;
    case Kind::Sub:
      print_node(*n.lhs, out, prec, false);
      out += " - ";
      print_node(*n.rhs, out, prec, true);
      break;
    case Kind::Mul:
      print_node(*n.lhs, out, prec, false);
      out += "*";
      print_node(*n.rhs, out, prec, true);
      break;
    case Kind::Div:
      print_node(*n.lhs, out, prec, false);
      out += "/";
      print_node(*n.rhs, out, prec, true);
      break;
    case Kind::Neg:
      out += '-';
      print_node(*n.lhs, out, prec, true);
      break;
    case Kind::Sin:
      out += "sin(";
      print_node(*n.lhs, out, 0, false);
      out += ')';
      break;
    case Kind::Cos:
      out += "cos(";
      print_node(*n.lhs, out, 0, false);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

double Expr::eval(double kx, double ky) const {
  if (!root_) throw ConfigError("evaluating an empty expression");
  return eval_node(*root_, kx, ky);
}

std::string Expr::str() const {
  if (!root_) throw ConfigError("printing an empty expression");
  std::string out;
  print_node(*root_, out, 0, false);
  return out;
}


Expr parse_expr(std::string_view text) { return Expr(Parser(text).parse()); }

Expr differentiate(const Expr& e, Var var) { return Expr(diff_node(e.root(), var)); }

SurfacePair SurfacePair::from_expressions(Expr a, Expr b) {
  SurfacePair s;
  s.a = a;
  s.b = b;
  s.da_dkx = differentiate(a, Var::kx);
  s.da_dky = differentiate(a, Var::ky);
  s.db_dkx = differentiate(b, Var::kx);
  s.db_dky = differentiate(b, Var::ky);
  s.det_j = Expr(binary(Kind::Sub, binary(Kind::Mul, s.da_dkx.root(), s.db_dky.root()),
                        binary(Kind::Mul, s.da_dky.root(), s.db_dkx.root())));
  return s;
}

SurfacePair SurfacePair::parse(std::string_view a_text, std::string_view b_text) {
  return from_expressions(parse_expr(a_text), parse_expr(b_text));
}

}  // namespace weylbec
