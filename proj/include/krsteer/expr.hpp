#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "krsteer/errors.hpp"
#include "krsteer/rational.hpp"

namespace krsteer {

enum class ExprKind { Const, Var, Add, Sub, Mul, Div, Pow, Sin, Cos, Tan, Sec, Csc, Cot, Atan };

class ExprNode;
/// Immutable shared expression; identical subtrees may be shared, so an Expr
/// is really a DAG. All operations below are pure.
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
 public:
  ExprKind kind;
  Rational value;    // Const
  int var = -1;      // Var
  int exponent = 0;  // Pow (nonzero)
  Expr a, b;

  ExprNode(ExprKind k, Rational v) : kind(k), value(std::move(v)) {}
  ExprNode(ExprKind k, int idx) : kind(k), var(idx) {}
  ExprNode(ExprKind k, Expr x, Expr y) : kind(k), a(std::move(x)), b(std::move(y)) {}
  ExprNode(ExprKind k, Expr x, int exp) : kind(k), exponent(exp), a(std::move(x)) {}
};

// Constructors apply only local rules (0+e, 1*e, 0*e, e^1, constant folding);
// no canonical simplification is attempted.
Expr expr_const(const Rational& c);
Expr expr_const(long c);
Expr expr_var(int index);
Expr expr_add(const Expr& a, const Expr& b);
Expr expr_sub(const Expr& a, const Expr& b);
Expr expr_mul(const Expr& a, const Expr& b);
Expr expr_div(const Expr& a, const Expr& b);
Expr expr_pow(const Expr& a, int exponent);
Expr expr_sin(const Expr& a);
Expr expr_cos(const Expr& a);
Expr expr_tan(const Expr& a);
Expr expr_sec(const Expr& a);
Expr expr_csc(const Expr& a);
Expr expr_cot(const Expr& a);
Expr expr_atan(const Expr& a);

bool expr_is_zero(const Expr& e);
bool expr_is_one(const Expr& e);

/// Symbolic partial derivative; closed on the Expr node set.
Expr expr_diff(const Expr& e, int var);

/// Numeric evaluation. Throws PoleError on a division by (nearly) zero or any
/// non-finite intermediate, rather than propagating NaN/Inf.
double expr_eval(const Expr& e, std::span<const double> point);

/// Evaluates several expressions with one shared subexpression cache.
std::vector<double> expr_eval_many(const std::vector<Expr>& es, std::span<const double> point);

/// Number of distinct nodes reachable from the given roots (DAG size).
std::size_t expr_dag_size(const std::vector<Expr>& roots);

/// Human-readable infix dump; exact rationals as "p/q". Debugging only.
std::string expr_to_string(const Expr& e, const std::vector<std::string>& names = {});

/// Vector field whose components are closed-form expression trees.
class SmoothExprField {
 public:
  SmoothExprField() = default;
  SmoothExprField(std::vector<Expr> components) : components_(std::move(components)) {}

  static SmoothExprField zero(int dimension);
  static SmoothExprField coordinate(int dimension, int index);

  int dimension() const { return static_cast<int>(components_.size()); }
  const Expr& component(int i) const { return components_[i]; }
  const std::vector<Expr>& components() const { return components_; }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::vector<Expr> components_;
};

/// Divisor magnitudes below this evaluate as poles.
inline constexpr double kPoleEps = 1e-14;

}  // namespace krsteer
