#pragma once

#include <map>
#include <utility>
#include <vector>

#include "krsteer/exact_linalg.hpp"
#include "krsteer/kr_forms.hpp"

namespace krsteer {

/// Basis of the Lie algebra generated by a pair of polynomial vector fields:
/// linearly independent elements (exact, over the rationals) with a complete
/// bracket table. bracket_table[(i,j)] for i < j holds the coordinates of
/// [e_i, e_j] in this basis.
struct LieBasis {
  std::vector<PolyVectorField> elements;
  int generator_k1 = 0;
  int generator_k2 = 1;
  std::map<std::pair<int, int>, std::vector<Rational>> bracket_table;

  int dimension() const { return static_cast<int>(elements.size()); }
  /// Coordinates of [e_i, e_j]; antisymmetry handled for i >= j.
  std::vector<Rational> bracket_coords(int i, int j) const;
};

/// Closes span(f1, f2) under Lie brackets, appending exactly-independent
/// results (breadth-first, i < j, insertion order) until no bracket leaves the
/// span. Throws BudgetError if the dimension would exceed max_dim.
LieBasis generate_algebra(const PolyVectorField& f1, const PolyVectorField& f2, int max_dim = 200);
LieBasis generate_algebra(const KRPair& pair, int max_dim = 200);

struct LowerCentralSeries {
  std::vector<int> dims;  // dim D_0, D_1, ... until 0 or stabilization
  bool nilpotent = false;
  int nilindex = -1;  // first k with D_k = 0 (when nilpotent)
};

/// Descending series D_0 = g, D_k = [g, D_{k-1}]. Non-nilpotency (the series
/// stabilizing at a nonzero dimension) is a result, not an error.
LowerCentralSeries lower_central_series(const LieBasis& basis);

/// Smallest m with (ad_e)^m = 0 as a matrix power in the basis; throws
/// DomainError when ad_e is not nilpotent.
int ad_nilpotency_check(const LieBasis& basis, int element_index);

}  // namespace krsteer
