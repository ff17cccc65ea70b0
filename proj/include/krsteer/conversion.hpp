#pragma once

#include <array>
#include <optional>

#include "krsteer/kr_forms.hpp"
#include "krsteer/trailer_model.hpp"

namespace krsteer {

enum class BaseBranch { Tan, Cot };
enum class StageBranch { Regular, Singular };

struct BranchWord {
  BaseBranch base = BaseBranch::Tan;
  std::vector<StageBranch> stages;  // stage 1 ... n

  bool operator==(const BranchWord& o) const { return base == o.base && stages == o.stages; }
  std::string to_string() const;
};

/// The full stack of coordinate functions x_1 ... x_{n+3} and per-stage
/// feedback functions produced by the recursive trailer-to-normal-form
/// transformation. Immutable once built; all evaluation is re-entrant.
///
/// In the tan base branch x_1 = xi1 and x_2 = xi2; in the cot branch the pair
/// is swapped. The swap is forced by the pushforward identities: the x_1
/// component of mu_0 * kappa2 must match L_{tau2} x_1 at the base point.
struct ConversionChain {
  int n = 0;
  std::optional<Configuration> base_point;
  BranchWord branches;
  std::vector<Expr> x_funcs;           // n+3 coordinate functions of the trailer state
  std::vector<Expr> mu, nu, eta;       // stages 0..n
  KRWord kr_target;                    // Singular at singular stages, Regular(0) elsewhere
  KRPair kr_pair;                      // build_kr(kr_target)

  int dimension() const { return n + 3; }
  const Expr& nu_top() const { return nu.back(); }
  const Expr& eta_top() const { return eta.back(); }
  const Expr& mu_top() const { return mu.back(); }
};

inline constexpr double kChainTol = 1e-9;
inline constexpr std::size_t kChainNodeBudget = 1000000;

/// Builds the chart for an explicit branch pattern, without base-point checks.
ConversionChain build_chain_with_branches(int n, const BranchWord& branches);

/// Branch selection by classify(p), then validity checks nu_i(p) != 0 and
/// mu_i(p) != 0 for every stage.
ConversionChain build_chain(int n, const Configuration& p);

/// Numeric evaluation of all coordinate functions. Throws PoleError when the
/// state is outside the chart's validity neighborhood.
std::vector<double> forward_map(const ConversionChain& chain, const Configuration& zeta);
std::vector<double> forward_map(const ConversionChain& chain, std::span<const double> state);

/// Forward (nu, eta, mu) and inverse (1/nu, -eta/(mu nu), 1/mu) feedback
/// function triples of the chain's top stage.
struct FeedbackMaps {
  Expr nu, eta, mu;
  Expr nu_hat, eta_hat, mu_hat;

  /// (v1, v2) -> (u1, u2) at the given state.
  std::array<double, 2> forward(std::span<const double> state, double v1, double v2) const;
  /// (u1, u2) -> (v1, v2) at the given state.
  std::array<double, 2> inverse(std::span<const double> state, double u1, double u2) const;
};

FeedbackMaps feedback_maps(const ConversionChain& chain);

/// Max-norm defect of the two pushforward identities at zeta: the transported
/// trailer fields against (nu, eta, mu) combinations of the normal-form pair,
/// with the Jacobian taken by central finite differences.
double pushforward_residual(const ConversionChain& chain, const Configuration& zeta,
                            double fd_step = 1e-5);

/// Inverse construction: a trailer configuration p whose chart realizes the
/// given word with forward_map(p) = y. Singular coordinates of y must vanish.
Configuration universal_point(const KRWord& word, std::span<const double> y);

/// Closed-form two-trailer transformation onto R^5, hard-coded independently
/// of build_chain. Requires the configuration to lie in the domain V.
std::array<double, 5> two_trailer_map(const Configuration& zeta);

/// Window (gamma, delta) in the last hitch angle on which the two-trailer
/// transformation is a diffeomorphism, for fixed tilde-angles. gamma lies in
/// (-pi/2, pi/2); delta - gamma = pi.
struct DomainWindow {
  double gamma = 0.0;
  double delta = 0.0;
};

DomainWindow domain_window(double tilde_theta0, double tilde_theta1);

/// Coefficients (a, b, c) with x5 = a cos(t2) / (b cos(t2) + c sin(t2)).
std::array<double, 3> domain_window_abc(double tilde_theta0, double tilde_theta1);

/// Index k of the window copy (gamma + k pi, delta + k pi) containing tt2.
int window_index(double tilde_theta0, double tilde_theta1, double tilde_theta2);

/// Membership in the domain V for the window copy `k`.
bool in_domain_V(const Configuration& zeta, int k);

}  // namespace krsteer
