#include "krsteer/trailer_model.hpp"

#include <cmath>

namespace krsteer {

double normalize_angle(double a) {
  double r = std::remainder(a, 2.0 * M_PI);
  if (r <= -M_PI) r = M_PI;
  return r;
}

Configuration::Configuration(double x1, double x2, std::vector<double> th)
    : xi1(x1), xi2(x2), thetas(std::move(th)) {
  if (thetas.empty()) throw DimensionError("Configuration: needs at least theta_0");
  normalize_angles();
}

Configuration Configuration::from_vector(std::vector<double> v) {
  if (v.size() < 3) throw DimensionError("Configuration: state vector needs at least 3 entries");
  return Configuration(v[0], v[1], std::vector<double>(v.begin() + 2, v.end()));
}

std::vector<double> Configuration::to_vector() const {
  std::vector<double> v;
  v.reserve(dimension());
  v.push_back(xi1);
  v.push_back(xi2);
  v.insert(v.end(), thetas.begin(), thetas.end());
  return v;
}

void Configuration::normalize_angles() {
  for (double& t : thetas) t = normalize_angle(t);
}

bool SingularityPattern::any() const {
  if (base) return true;
  for (bool b : stages)
    if (b) return true;
  return false;
}

namespace {

bool near_half_pi_mod_pi(double angle, double tol) {
  return std::fabs(std::remainder(angle - M_PI / 2.0, M_PI)) <= tol;
}

}  // namespace

SingularityPattern classify(const Configuration& p, double tol) {
  if (tol < 0) throw DimensionError("classify: tol must be >= 0");
  SingularityPattern pat;
  pat.base = near_half_pi_mod_pi(p.thetas[0], tol);
  pat.stages.reserve(p.trailer_count());
  for (int i = 1; i <= p.trailer_count(); ++i)
    pat.stages.push_back(near_half_pi_mod_pi(p.thetas[i] - p.thetas[i - 1], tol));
  return pat;
}

std::pair<SmoothExprField, SmoothExprField> trailer_fields(int n) {
  if (n < 0) throw DimensionError("trailer_fields: n must be >= 0");
  // unicycle on (xi1, xi2, theta_0)
  SmoothExprField t1 = SmoothExprField::coordinate(3, 2);
  std::vector<Expr> comps(3, expr_const(0));
  comps[0] = expr_cos(expr_var(2));
  comps[1] = expr_sin(expr_var(2));
  SmoothExprField t2{std::move(comps)};
  for (int i = 1; i <= n; ++i) {
    const int dim = i + 3;
    Expr diff = expr_sub(expr_var(dim - 1), expr_var(dim - 2));  // theta_i - theta_{i-1}
    Expr s = expr_sin(diff);
    Expr c = expr_cos(diff);
    SmoothExprField l1 = lift(t1);
    SmoothExprField l2 = lift(t2);
    std::vector<Expr> next(dim);
    for (int k = 0; k < dim; ++k)
      next[k] = expr_add(expr_mul(s, l1.component(k)), expr_mul(c, l2.component(k)));
    t2 = SmoothExprField(std::move(next));
    t1 = SmoothExprField::coordinate(dim, dim - 1);
  }
  return {t1, t2};
}

std::vector<double> trailer_rhs(int n, const Configuration& p, double v1, double v2) {
  auto [t1, t2] = trailer_fields(n);
  std::vector<double> state = p.to_vector();
  if (static_cast<int>(state.size()) != n + 3)
    throw DimensionError("trailer_rhs: configuration does not match trailer count");
  std::vector<double> a = eval_field(t1, state);
  std::vector<double> b = eval_field(t2, state);
  std::vector<double> out(n + 3);
  for (int i = 0; i < n + 3; ++i) out[i] = a[i] * v1 + b[i] * v2;
  return out;
}

}  // namespace krsteer
