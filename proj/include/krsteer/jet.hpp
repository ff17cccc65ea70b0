#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "krsteer/expr.hpp"
#include "krsteer/polynomial.hpp"

namespace krsteer {

/// Monomial tables for truncated Taylor expansions with a fixed variable
/// count and truncation order. Instances are cached globally and immutable.
class JetSpace {
 public:
  static const JetSpace& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const Monomial& monomial(int i) const { return monomials_[i]; }
  int degree(int i) const { return degrees_[i]; }
  /// Index of a packed exponent key, or -1 when outside the truncation.
  int index_of_packed(std::uint64_t key) const;
  std::uint64_t packed(int i) const { return packed_[i]; }

 private:
  JetSpace(int nvars, int order);
  int nvars_, order_;
  std::vector<Monomial> monomials_;
  std::vector<int> degrees_;
  std::vector<std::uint64_t> packed_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Truncated multivariate Taylor polynomial (float coefficients) of a smooth
/// function at a point; variable i stands for the offset from the expansion
/// point. Supports ring operations and composition with the library's
/// elementary functions, each exact up to the truncation order.
class Jet {
 public:
  Jet() : space_(nullptr) {}
  Jet(int nvars, int order) : space_(&JetSpace::get(nvars, order)), c_(space_->size(), 0.0) {}

  static Jet constant(int nvars, int order, double v);
  /// p_i + delta_i for the variable at `index` expanded around value v.
  static Jet variable(int nvars, int order, int index, double v);

  int nvars() const { return space_->nvars(); }
  int order() const { return space_->order(); }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }
  double coeff(int i) const { return c_[i]; }
  double& coeff(int i) { return c_[i]; }
  bool is_zero() const;

  Jet truncated(int order) const;
  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet scaled(double s) const;
  /// Product truncated to `out_order`.
  Jet mul(const Jet& o, int out_order) const;
  /// d/d(var); order drops by one.
  Jet partial(int var) const;

  friend Jet jet_div(const Jet& a, const Jet& b, int out_order);
  friend Jet jet_pow(const Jet& a, int exponent, int out_order);
  friend Jet jet_compose(ExprKind fn, const Jet& a, int out_order);

 private:
  const JetSpace* space_;
  std::vector<double> c_;
};

Jet jet_div(const Jet& a, const Jet& b, int out_order);
Jet jet_pow(const Jet& a, int exponent, int out_order);
/// sin/cos/tan/sec/csc/cot/atan of a jet.
Jet jet_compose(ExprKind fn, const Jet& a, int out_order);

/// Taylor expansion of an expression at `point`, to the given order.
Jet expr_to_jet(const Expr& e, std::span<const double> point, int order);
/// Taylor expansion (exact shift, then floats) of a polynomial at `point`.
Jet poly_to_jet(const Polynomial& p, std::span<const double> point, int order);

/// Vector field represented by component jets at a common point.
struct JetField {
  std::vector<Jet> comps;
  int order = 0;
  std::vector<double> values() const;
};

JetField to_jet_field(const PolyVectorField& f, std::span<const double> point, int order);
JetField to_jet_field(const SmoothExprField& f, std::span<const double> point, int order);

/// [f,g] truncated to min(order_f, order_g) - 1.
JetField jet_bracket(const JetField& f, const JetField& g);

/// Dimensions [dim D^(0)(p), ..., dim D^(depth)(p)] of the derived flag of the
/// distribution spanned by the two generators, by spanning-set brackets on
/// jets and numeric rank at the point. Rank uses singular values with the
/// given relative threshold; a singular value within a decade of the
/// threshold is flagged as an ambiguous rank decision.
std::vector<int> derived_flag_dims_jets(const JetField& g1, const JetField& g2, int depth,
                                        double rank_rel_tol = 1e-8);

}  // namespace krsteer
