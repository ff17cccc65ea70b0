#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krsteer/field_ops.hpp"
#include "krsteer/jet.hpp"

namespace krsteer {

/// One prolongation step: regular with an exact rational parameter, or singular.
struct KRStep {
  enum class Kind { Regular, Singular };
  Kind kind = Kind::Regular;
  Rational constant = 0;

  static KRStep regular(const Rational& c) { return {Kind::Regular, c}; }
  static KRStep singular() { return {Kind::Singular, 0}; }
  bool is_singular() const { return kind == Kind::Singular; }
  bool operator==(const KRStep& o) const {
    return kind == o.kind && (kind == Kind::Singular || constant == o.constant);
  }
};

/// Word of prolongation tags; the empty word denotes the Pfaff-Darboux form on
/// R^3, a word of length k a form on R^(3+k).
struct KRWord {
  std::vector<KRStep> steps;

  int dimension() const { return 3 + static_cast<int>(steps.size()); }
  bool operator==(const KRWord& o) const { return steps == o.steps; }
  /// Same regular/singular pattern, ignoring regular constants.
  bool same_pattern(const KRWord& o) const;

  /// Notation "R(c).S.R(1/2)"; empty string is the empty word.
  std::string to_string() const;
  static KRWord parse(const std::string& text);
};

/// A Kumpera-Ruiz normal form: the pair (kappa1, kappa2) on R^n together with
/// the word that produced it. kappa1 is exactly d/dx_n.
struct KRPair {
  PolyVectorField k1;
  PolyVectorField k2;
  KRWord word;

  int dimension() const { return k1.dimension(); }
};

/// Pfaff-Darboux form on R^3: (d/dx3, x3 d/dx2 + d/dx1).
KRPair kappa3();

/// One regular or singular prolongation, appending a coordinate.
KRPair prolong(const KRPair& pair, const KRStep& step);

/// Folds prolong over the word starting from kappa3().
KRPair build_kr(const KRWord& word);

/// The all-regular-zero-constant word on R^n (Goursat normal form).
KRPair chained_form(int n);

// Derived-flag dimensions at a point, computed on jets with numeric rank.
// Default depth is n-2 (flag up to the full tangent space).
std::vector<int> derived_flag_dims(const PolyVectorField& f1, const PolyVectorField& f2,
                                   std::span<const double> point,
                                   std::optional<int> depth = std::nullopt,
                                   double rank_rel_tol = 1e-8);
std::vector<int> derived_flag_dims(const SmoothExprField& f1, const SmoothExprField& f2,
                                   std::span<const double> point,
                                   std::optional<int> depth = std::nullopt,
                                   double rank_rel_tol = 1e-8);
std::vector<int> derived_flag_dims(const KRPair& pair, std::span<const double> point,
                                   std::optional<int> depth = std::nullopt,
                                   double rank_rel_tol = 1e-8);

}  // namespace krsteer
