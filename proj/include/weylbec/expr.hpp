#ifndef WEYLBEC_EXPR_HPP
#define WEYLBEC_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

namespace weylbec {

enum class Var { kx, ky };

/// Immutable expression tree over (kx, ky): literals, pi, + - * /, unary -,
/// sin, cos. Evaluation is pure, so an Expr may be shared across threads.
class Expr {
 public:
  Expr() = default;

  double eval(double kx, double ky) const;

  /// Re-parsable text form; parse_expr(str()) evaluates identically.
  std::string str() const;


  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  const NodePtr& root() const { return root_; }

 private:
  NodePtr root_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := number | 'pi' | 'kx' | 'ky' | 'sin(' expr ')' | 'cos(' expr ')'
///           | '(' expr ')' | '-' factor
/// Throws ParseError with the offending position.
Expr parse_expr(std::string_view text);

/// Exact symbolic partial derivative. Constants produced along the way are
/// folded; no other rewriting is done.
Expr differentiate(const Expr& e, Var var);

/// The pair (a, b) defining a bulk model, with its symbolic partials and
/// the Jacobian determinant det J = a_x b_y - a_y b_x.
struct SurfacePair {
  Expr a, b;
  Expr da_dkx, da_dky, db_dkx, db_dky;
  Expr det_j;

  static SurfacePair from_expressions(Expr a, Expr b);
  static SurfacePair parse(std::string_view a_text, std::string_view b_text);

  double a_at(double kx, double ky) const { return a.eval(kx, ky); }
  double b_at(double kx, double ky) const { return b.eval(kx, ky); }
  double det_j_at(double kx, double ky) const { return det_j.eval(kx, ky); }

  /// grad b = (db/dkx, db/dky)
  std::pair<double, double> grad_b_at(double kx, double ky) const {
    return {db_dkx.eval(kx, ky), db_dky.eval(kx, ky)};
  }
  std::pair<double, double> grad_a_at(double kx, double ky) const {
    return {da_dkx.eval(kx, ky), da_dky.eval(kx, ky)};
  }
};

}  // namespace weylbec

#endif
