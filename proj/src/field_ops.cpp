#include "krsteer/field_ops.hpp"

namespace krsteer {

PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g) {
  if (f.dimension() != g.dimension()) throw DimensionError("lie_bracket: dimension mismatch");
  const int n = f.dimension();
  std::vector<Polynomial> comps;
  comps.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial acc(n);
    for (int j = 0; j < n; ++j) {
      acc += f.component(j) * g.component(i).partial(j);
      acc += (g.component(j) * f.component(i).partial(j)).scaled(Rational(-1));
    }
    comps.push_back(std::move(acc));
  }
  return PolyVectorField(std::move(comps));
}

SmoothExprField lie_bracket(const SmoothExprField& f, const SmoothExprField& g) {
  if (f.dimension() != g.dimension()) throw DimensionError("lie_bracket: dimension mismatch");
  const int n = f.dimension();
  std::vector<Expr> comps;
  comps.reserve(n);
  for (int i = 0; i < n; ++i) {
    Expr acc = expr_const(0);
    for (int j = 0; j < n; ++j) {
      acc = expr_add(acc, expr_mul(f.component(j), expr_diff(g.component(i), j)));
      acc = expr_sub(acc, expr_mul(g.component(j), expr_diff(f.component(i), j)));
    }
    comps.push_back(acc);
  }
  return SmoothExprField(std::move(comps));
}

PolyVectorField lift(const PolyVectorField& f) {
  const int n = f.dimension() + 1;
  std::vector<Polynomial> comps;
  comps.reserve(n);
  for (const auto& c : f.components()) comps.push_back(c.extended(n));
  comps.push_back(Polynomial::zero(n));
  return PolyVectorField(std::move(comps));
}

SmoothExprField lift(const SmoothExprField& f) {
  std::vector<Expr> comps = f.components();
  comps.push_back(expr_const(0));
  return SmoothExprField(std::move(comps));
}

Polynomial lie_derivative(const PolyVectorField& f, const Polynomial& h) {
  if (f.dimension() != h.num_vars()) throw DimensionError("lie_derivative: dimension mismatch");
  Polynomial acc(h.num_vars());
  for (int j = 0; j < f.dimension(); ++j) acc += f.component(j) * h.partial(j);
  return acc;
}

Expr lie_derivative(const SmoothExprField& f, const Expr& h) {
  Expr acc = expr_const(0);
  for (int j = 0; j < f.dimension(); ++j)
    acc = expr_add(acc, expr_mul(f.component(j), expr_diff(h, j)));
  return acc;
}

std::vector<double> eval_field(const PolyVectorField& f, std::span<const double> point) {
  std::vector<double> out(f.dimension());
  for (int i = 0; i < f.dimension(); ++i) {
    try {
      out[i] = f.component(i).eval(point);
    } catch (const PoleError& e) {
      throw PoleError(std::string(e.what()) + " (component " + std::to_string(i) + ")", i);
    }
  }
  return out;
}

std::vector<double> eval_field(const SmoothExprField& f, std::span<const double> point) {
  std::vector<double> out(f.dimension());
  for (int i = 0; i < f.dimension(); ++i) {
    try {
      out[i] = expr_eval(f.component(i), point);
    } catch (const PoleError& e) {
      throw PoleError(std::string(e.what()) + " (component " + std::to_string(i) + ")", i);
    }
  }
  return out;
}

}  // namespace krsteer
