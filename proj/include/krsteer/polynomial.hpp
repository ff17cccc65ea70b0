#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "krsteer/errors.hpp"
#include "krsteer/rational.hpp"

namespace krsteer {

/// Exponent multi-index; length equals the ambient variable count.
using Monomial = std::vector<unsigned>;

/// Multivariate polynomial over exact rationals. Terms with zero coefficient
/// are never stored; all multi-indices have length num_vars().
class Polynomial {
 public:
  Polynomial() : num_vars_(0) {}
  explicit Polynomial(int num_vars) : num_vars_(num_vars) {}

  static Polynomial zero(int num_vars) { return Polynomial(num_vars); }
  static Polynomial constant(int num_vars, const Rational& c);
  static Polynomial variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  int total_degree() const;

  Rational coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  bool operator==(const Polynomial& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }

  Polynomial scaled(const Rational& c) const;
  Polynomial partial(int var) const;

  /// Antiderivative in `var` with zero constant term.
  Polynomial antiderivative(int var) const;

  /// Re-embeds into a larger variable set (existing variables keep their slots).
  Polynomial extended(int new_num_vars) const;

  /// Substitutes polynomials for all variables. `subs.size() == num_vars()`.
  Polynomial substituted(const std::vector<Polynomial>& subs) const;

  /// Fixes variable `var` to an exact rational, producing a polynomial in the
  /// same ambient variable set (the slot just no longer occurs).
  Polynomial with_var_fixed(int var, const Rational& value) const;

  double eval(std::span<const double> point) const;
  Rational eval_exact(const std::vector<Rational>& point) const;

  template <typename Num>
  Num eval_generic(const std::vector<Num>& point) const {
    Num acc(0);
    for (const auto& [mono, coeff] : terms_) {
      Num t(coeff);
      for (int v = 0; v < num_vars_; ++v)
        for (unsigned k = 0; k < mono[v]; ++k) t = t * point[v];
      acc = acc + t;
    }
    return acc;
  }

  /// Human-readable infix dump, exact rationals as "p/q". Not a stable wire format.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_same(const Polynomial& o) const;
  int num_vars_;
  std::map<Monomial, Rational> terms_;
};

/// Vector field with polynomial components, one per coordinate.
class PolyVectorField {
 public:
  PolyVectorField() = default;
  PolyVectorField(std::vector<Polynomial> components);

  static PolyVectorField zero(int dimension);
  /// The coordinate field d/dx_index.
  static PolyVectorField coordinate(int dimension, int index);

  int dimension() const { return static_cast<int>(components_.size()); }
  const Polynomial& component(int i) const { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }
  bool is_zero() const;
  bool operator==(const PolyVectorField& o) const { return components_ == o.components_; }

  PolyVectorField operator+(const PolyVectorField& o) const;
  PolyVectorField scaled(const Rational& c) const;
  /// Multiplies every component by a scalar polynomial.
  PolyVectorField scaled(const Polynomial& p) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::vector<Polynomial> components_;
};

}  // namespace krsteer
