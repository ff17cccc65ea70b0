#pragma once

#include <utility>
#include <vector>

#include "krsteer/field_ops.hpp"

namespace krsteer {

/// Trailer-space state (xi1, xi2, theta_0 ... theta_n); angles are normalized
/// to (-pi, pi] at construction. Variable ordering everywhere in trailer space
/// is (xi1, xi2, theta_0, ..., theta_n).
struct Configuration {
  double xi1 = 0.0;
  double xi2 = 0.0;
  std::vector<double> thetas;  // theta_0 ... theta_n

  Configuration() = default;
  Configuration(double x1, double x2, std::vector<double> th);
  static Configuration from_vector(std::vector<double> v);

  int trailer_count() const { return static_cast<int>(thetas.size()) - 1; }
  int dimension() const { return static_cast<int>(thetas.size()) + 2; }
  std::vector<double> to_vector() const;
  void normalize_angles();
};

/// Normalizes one angle to (-pi, pi].
double normalize_angle(double a);

/// Which hitch angles sit on the singular locus: base is true iff theta_0 =
/// +-pi/2 (mod 2pi) within tol, stages[i-1] iff theta_i - theta_{i-1} does.
struct SingularityPattern {
  bool base = false;
  std::vector<bool> stages;

  bool any() const;
};

inline constexpr double kClassifyTol = 1e-9;

SingularityPattern classify(const Configuration& p, double tol = kClassifyTol);

/// The inductive n-trailer fields (tau1, tau2) on dimension n+3, unit hitch
/// lengths.
std::pair<SmoothExprField, SmoothExprField> trailer_fields(int n);

/// Right-hand side of zeta' = tau1(zeta) v1 + tau2(zeta) v2.
std::vector<double> trailer_rhs(int n, const Configuration& p, double v1, double v2);

}  // namespace krsteer
