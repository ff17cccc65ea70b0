#include "krsteer/conversion.hpp"

#include <cmath>
#include <sstream>

namespace krsteer {

std::string BranchWord::to_string() const {
  std::ostringstream os;
  os << (base == BaseBranch::Tan ? "tan" : "cot");
  for (auto s : stages) os << (s == StageBranch::Singular ? ".S" : ".R");
  return os.str();
}

ConversionChain build_chain_with_branches(int n, const BranchWord& branches) {
  if (n < 0) throw DimensionError("build_chain: n must be >= 0");
  if (static_cast<int>(branches.stages.size()) != n)
    throw DimensionError("build_chain: branch word must have one tag per trailer");
  ConversionChain ch;
  ch.n = n;
  ch.branches = branches;

  const Expr th0 = expr_var(2);
  if (branches.base == BaseBranch::Tan) {
    ch.x_funcs = {expr_var(0), expr_var(1), expr_tan(th0)};
    ch.mu = {expr_cos(th0)};
    ch.nu = {expr_pow(expr_sec(th0), 2)};
  } else {
    ch.x_funcs = {expr_var(1), expr_var(0), expr_cot(th0)};
    ch.mu = {expr_sin(th0)};
    ch.nu = {expr_mul(expr_const(-1), expr_pow(expr_csc(th0), 2))};
  }
  ch.eta = {expr_const(0)};

  for (int i = 1; i <= n; ++i) {
    auto [t1, t2] = trailer_fields(i);
    const Expr s = expr_sin(expr_sub(expr_var(i + 2), expr_var(i + 1)));
    const Expr c = expr_cos(expr_sub(expr_var(i + 2), expr_var(i + 1)));
    const Expr mixed = expr_add(expr_mul(s, ch.nu[i - 1]), expr_mul(c, ch.eta[i - 1]));
    const Expr scaled = expr_mul(c, ch.mu[i - 1]);
    Expr x;
    if (branches.stages[i - 1] == StageBranch::Regular) {
      x = expr_div(mixed, scaled);
      ch.mu.push_back(scaled);
      ch.kr_target.steps.push_back(KRStep::regular(0));
    } else {
      x = expr_div(scaled, mixed);
      ch.mu.push_back(mixed);
      ch.kr_target.steps.push_back(KRStep::singular());
    }
    ch.x_funcs.push_back(x);
    ch.nu.push_back(lie_derivative(t1, x));
    ch.eta.push_back(lie_derivative(t2, x));

    std::vector<Expr> roots = ch.x_funcs;
    roots.insert(roots.end(), ch.mu.begin(), ch.mu.end());
    roots.insert(roots.end(), ch.nu.begin(), ch.nu.end());
    roots.insert(roots.end(), ch.eta.begin(), ch.eta.end());
    if (expr_dag_size(roots) > kChainNodeBudget)
      throw BudgetError("build_chain: expression size budget exceeded at stage " + std::to_string(i));
  }
  ch.kr_pair = build_kr(ch.kr_target);
  return ch;
}

ConversionChain build_chain(int n, const Configuration& p) {
  if (p.trailer_count() != n) throw DimensionError("build_chain: configuration does not match n");
  SingularityPattern pat = classify(p);
  BranchWord br;
  br.base = pat.base ? BaseBranch::Cot : BaseBranch::Tan;
  br.stages.reserve(n);
  for (int i = 0; i < n; ++i)
    br.stages.push_back(pat.stages[i] ? StageBranch::Singular : StageBranch::Regular);
  ConversionChain ch = build_chain_with_branches(n, br);
  ch.base_point = p;

  const std::vector<double> state = p.to_vector();
  for (int i = 0; i <= n; ++i) {
    double nu_p, mu_p;
    try {
      nu_p = expr_eval(ch.nu[i], state);
      mu_p = expr_eval(ch.mu[i], state);
    } catch (const PoleError& e) {
      throw DomainError(std::string("build_chain: stage function pole at base point, stage ") +
                        std::to_string(i) + ": " + e.what());
    }
    if (std::fabs(nu_p) < kChainTol || std::fabs(mu_p) < kChainTol)
      throw DomainError("build_chain: nu or mu vanishes at the base point at stage " +
                        std::to_string(i) + " (misclassified branch)");
  }
  return ch;
}

std::vector<double> forward_map(const ConversionChain& chain, std::span<const double> state) {
  if (static_cast<int>(state.size()) != chain.dimension())
    throw DimensionError("forward_map: state dimension mismatch");
  return expr_eval_many(chain.x_funcs, state);
}

std::vector<double> forward_map(const ConversionChain& chain, const Configuration& zeta) {
  std::vector<double> state = zeta.to_vector();
  return forward_map(chain, state);
}

FeedbackMaps feedback_maps(const ConversionChain& chain) {
  FeedbackMaps f;
  f.nu = chain.nu_top();
  f.eta = chain.eta_top();
  f.mu = chain.mu_top();
  f.nu_hat = expr_div(expr_const(1), f.nu);
  f.eta_hat = expr_mul(expr_const(-1), expr_div(f.eta, expr_mul(f.mu, f.nu)));
  f.mu_hat = expr_div(expr_const(1), f.mu);
  return f;
}

std::array<double, 2> FeedbackMaps::forward(std::span<const double> state, double v1, double v2) const {
  auto vals = expr_eval_many({nu, eta, mu}, state);
  return {vals[0] * v1 + vals[1] * v2, vals[2] * v2};
}

std::array<double, 2> FeedbackMaps::inverse(std::span<const double> state, double u1, double u2) const {
  auto vals = expr_eval_many({nu_hat, eta_hat, mu_hat}, state);
  return {vals[0] * u1 + vals[1] * u2, vals[2] * u2};
}

double pushforward_residual(const ConversionChain& chain, const Configuration& zeta, double fd_step) {
  const int dim = chain.dimension();
  const std::vector<double> state = zeta.to_vector();
  const std::vector<double> x = forward_map(chain, state);

  // Jacobian of the coordinate change by central differences.
  std::vector<std::vector<double>> jac(dim, std::vector<double>(dim));
  std::vector<double> pert = state;
  for (int j = 0; j < dim; ++j) {
    pert[j] = state[j] + fd_step;
    std::vector<double> hi = forward_map(chain, pert);
    pert[j] = state[j] - fd_step;
    std::vector<double> lo = forward_map(chain, pert);
    pert[j] = state[j];
    for (int i = 0; i < dim; ++i) jac[i][j] = (hi[i] - lo[i]) / (2.0 * fd_step);
  }

  auto [t1, t2] = trailer_fields(chain.n);
  const std::vector<double> f1 = eval_field(t1, state);
  const std::vector<double> f2 = eval_field(t2, state);
  const auto fb = expr_eval_many({chain.nu_top(), chain.eta_top(), chain.mu_top()}, state);
  const std::vector<double> k2 = eval_field(chain.kr_pair.k2, x);

  double residual = 0.0;
  for (int i = 0; i < dim; ++i) {
    double push1 = 0.0, push2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      push1 += jac[i][j] * f1[j];
      push2 += jac[i][j] * f2[j];
    }
    const double k1_i = (i == dim - 1) ? 1.0 : 0.0;
    residual = std::max(residual, std::fabs(push1 - fb[0] * k1_i));
    residual = std::max(residual, std::fabs(push2 - (fb[1] * k1_i + fb[2] * k2[i])));
  }
  return residual;
}

Configuration universal_point(const KRWord& word, std::span<const double> y) {
  const int n = static_cast<int>(word.steps.size());
  if (static_cast<int>(y.size()) != n + 3) throw DimensionError("universal_point: y dimension mismatch");
  for (int i = 1; i <= n; ++i)
    if (word.steps[i - 1].is_singular() && std::fabs(y[i + 2]) > 1e-12)
      throw DomainError("universal_point: nonzero target at singular coordinate " + std::to_string(i + 3));

  BranchWord br;
  br.base = BaseBranch::Tan;
  for (int i = 0; i < n; ++i)
    br.stages.push_back(word.steps[i].is_singular() ? StageBranch::Singular : StageBranch::Regular);
  ConversionChain ch = build_chain_with_branches(n, br);

  std::vector<double> state(n + 3, 0.0);
  state[0] = y[0];
  state[1] = y[1];
  state[2] = std::atan(y[2]);
  for (int i = 1; i <= n; ++i) {
    if (word.steps[i - 1].is_singular()) {
      state[i + 2] = state[i + 1] + M_PI / 2.0;
    } else {
      const double mu_p = expr_eval(ch.mu[i - 1], state);
      const double nu_p = expr_eval(ch.nu[i - 1], state);
      const double eta_p = expr_eval(ch.eta[i - 1], state);
      if (std::fabs(nu_p) < kChainTol)
        throw DomainError("universal_point: intermediate nu vanishes at stage " + std::to_string(i));
      state[i + 2] = state[i + 1] + std::atan((mu_p * y[i + 2] - eta_p) / nu_p);
    }
  }
  return Configuration(state[0], state[1], std::vector<double>(state.begin() + 2, state.end()));
}

std::array<double, 5> two_trailer_map(const Configuration& zeta) {
  if (zeta.trailer_count() != 2) throw DimensionError("two_trailer_map: needs exactly two trailers");
  const double th0 = zeta.thetas[0];
  const double tt1 = zeta.thetas[1] - zeta.thetas[0];
  const double tt2 = zeta.thetas[2] - zeta.thetas[1];
  const double c0 = std::cos(th0), c1 = std::cos(tt1), c2 = std::cos(tt2);
  const double s1 = std::sin(tt1), s2 = std::sin(tt2);
  if (std::fabs(c0) < kPoleEps) throw PoleError("two_trailer_map: pole at theta_0 = +-pi/2");
  if (std::fabs(c1) < kPoleEps) throw PoleError("two_trailer_map: pole at theta_1 - theta_0 = +-pi/2");
  const double sec1 = 1.0 / c1;
  const double den = 3.0 * std::tan(th0) * (s1 / c1) * s1 * c2 + sec1 * sec1 * (s2 - s1 * c2);
  if (std::fabs(den) < kPoleEps) throw PoleError("two_trailer_map: x5 denominator vanishes");
  std::array<double, 5> x;
  x[0] = zeta.xi1;
  x[1] = zeta.xi2;
  x[2] = std::tan(th0);
  x[3] = (s1 / c1) / (c0 * c0 * c0);
  x[4] = c0 * c0 * c0 * c0 * c1 * c2 / den;
  return x;
}

std::array<double, 3> domain_window_abc(double tt0, double tt1) {
  if (std::fabs(tt0) >= M_PI / 2.0 || std::fabs(tt1) >= M_PI / 2.0)
    throw DomainError("domain_window: tilde angles must lie in (-pi/2, pi/2)");
  const double sec1 = 1.0 / std::cos(tt1);
  const double a = std::pow(std::cos(tt0), 4) * std::cos(tt1);
  const double b = 3.0 * std::tan(tt0) * std::tan(tt1) * std::sin(tt1) - sec1 * sec1 * std::sin(tt1);
  const double c = sec1 * sec1;
  return {a, b, c};
}

DomainWindow domain_window(double tt0, double tt1) {
  const auto abc = domain_window_abc(tt0, tt1);
  DomainWindow w;
  w.gamma = std::atan(-abc[1] / abc[2]);  // c = sec^2 >= 1, never zero
  w.delta = w.gamma + M_PI;
  return w;
}

int window_index(double tt0, double tt1, double tt2) {
  DomainWindow w = domain_window(tt0, tt1);
  return static_cast<int>(std::floor((tt2 - w.gamma) / M_PI));
}

bool in_domain_V(const Configuration& zeta, int k) {
  if (zeta.trailer_count() != 2) throw DimensionError("in_domain_V: needs exactly two trailers");
  const double tt0 = zeta.thetas[0];
  const double tt1 = zeta.thetas[1] - zeta.thetas[0];
  const double tt2 = zeta.thetas[2] - zeta.thetas[1];
  if (std::fabs(tt0) >= M_PI / 2.0 || std::fabs(tt1) >= M_PI / 2.0) return false;
  DomainWindow w = domain_window(tt0, tt1);
  // Hitch angles are only defined mod 2pi, so compare against the window
  // center on the circle. Copies k and k+2 are the same subset of the torus.
  const double center = w.gamma + k * M_PI + M_PI / 2.0;
  return std::fabs(std::remainder(tt2 - center, 2.0 * M_PI)) < M_PI / 2.0;
}

}  // namespace krsteer
