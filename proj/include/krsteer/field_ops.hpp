#pragma once

#include <span>
#include <vector>

#include "krsteer/expr.hpp"
#include "krsteer/polynomial.hpp"

namespace krsteer {

// Jacobi-Lie bracket [f,g] = (Dg)f - (Df)g, in coordinates. Exact for
// polynomial fields, expression-tree result for smooth fields.
PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g);
SmoothExprField lie_bracket(const SmoothExprField& f, const SmoothExprField& g);

// Appends a zero component; existing components now read as functions that
// ignore the new last coordinate.
PolyVectorField lift(const PolyVectorField& f);
SmoothExprField lift(const SmoothExprField& f);

// L_f h = sum_i f_i dh/dx_i.
Polynomial lie_derivative(const PolyVectorField& f, const Polynomial& h);
Expr lie_derivative(const SmoothExprField& f, const Expr& h);

// Componentwise numeric evaluation; pole errors carry the component index.
std::vector<double> eval_field(const PolyVectorField& f, std::span<const double> point);
std::vector<double> eval_field(const SmoothExprField& f, std::span<const double> point);

}  // namespace krsteer
