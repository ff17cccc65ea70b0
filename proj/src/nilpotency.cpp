#include "krsteer/nilpotency.hpp"

namespace krsteer {

namespace {

using FieldKey = std::pair<int, Monomial>;
using FieldVec = std::map<FieldKey, Rational>;

FieldVec flatten(const PolyVectorField& f) {
  FieldVec v;
  for (int i = 0; i < f.dimension(); ++i)
    for (const auto& [m, c] : f.component(i).terms()) v[{i, m}] = c;
  return v;
}

}  // namespace

std::vector<Rational> LieBasis::bracket_coords(int i, int j) const {
  if (i == j) return std::vector<Rational>(dimension(), Rational(0));
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = bracket_table.find({i, j});
  if (it == bracket_table.end()) throw DomainError("LieBasis: bracket table incomplete");
  std::vector<Rational> out = it->second;
  if (flip)
    for (auto& c : out) c = -c;
  return out;
}

LieBasis generate_algebra(const PolyVectorField& f1, const PolyVectorField& f2, int max_dim) {
  if (max_dim < 2) throw DimensionError("generate_algebra: max_dim must be >= 2");
  if (f1.dimension() != f2.dimension()) throw DimensionError("generate_algebra: dimension mismatch");
  LieBasis basis;
  ExactSpan<FieldKey> span;
  auto insert_gen = [&](const PolyVectorField& f) {
    if (span.reduce(flatten(f), true)) throw DomainError("generate_algebra: generators are dependent");
    basis.elements.push_back(f);
  };
  insert_gen(f1);
  insert_gen(f2);

  for (std::size_t j = 1; j < basis.elements.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      PolyVectorField br = lie_bracket(basis.elements[i], basis.elements[j]);
      auto coords = span.reduce(flatten(br), true);
      if (coords) {
        basis.bracket_table[{static_cast<int>(i), static_cast<int>(j)}] = std::move(*coords);
      } else {
        basis.elements.push_back(std::move(br));
        if (static_cast<int>(basis.elements.size()) > max_dim)
          throw BudgetError("generate_algebra: dimension exceeds max_dim = " + std::to_string(max_dim) +
                            " without closure");
        std::vector<Rational> unit(basis.elements.size(), Rational(0));
        unit.back() = 1;
        basis.bracket_table[{static_cast<int>(i), static_cast<int>(j)}] = std::move(unit);
      }
    }
  }
  // pad earlier coordinate vectors to the final dimension
  for (auto& [ij, coords] : basis.bracket_table) coords.resize(basis.elements.size(), Rational(0));
  return basis;
}

LieBasis generate_algebra(const KRPair& pair, int max_dim) {
  return generate_algebra(pair.k1, pair.k2, max_dim);
}

LowerCentralSeries lower_central_series(const LieBasis& basis) {
  const int d = basis.dimension();
  LowerCentralSeries out;
  out.dims.push_back(d);
  // current subspace basis, as coordinate vectors
  std::vector<std::vector<Rational>> current(d);
  for (int i = 0; i < d; ++i) {
    current[i].assign(d, Rational(0));
    current[i][i] = 1;
  }
  for (int k = 1; k <= d + 1; ++k) {
    ExactSpan<int> span;
    std::vector<std::vector<Rational>> next;
    for (int i = 0; i < d; ++i) {
      for (const auto& w : current) {
        std::vector<Rational> img(d, Rational(0));
        for (int j = 0; j < d; ++j) {
          if (w[j] == 0) continue;
          std::vector<Rational> bc = basis.bracket_coords(i, j);
          for (int t = 0; t < d; ++t) img[t] += w[j] * bc[t];
        }
        std::map<int, Rational> sv;
        for (int t = 0; t < d; ++t)
          if (img[t] != 0) sv[t] = img[t];
        if (sv.empty()) continue;
        if (!span.reduce(sv, true)) next.push_back(std::move(img));
      }
    }
    out.dims.push_back(static_cast<int>(next.size()));
    if (next.empty()) {
      out.nilpotent = true;
      out.nilindex = k;
      return out;
    }
    if (out.dims[k] == out.dims[k - 1]) {
      out.nilpotent = false;  // stabilized at a nonzero dimension
      return out;
    }
    current = std::move(next);
  }
  out.nilpotent = false;
  return out;
}

int ad_nilpotency_check(const LieBasis& basis, int element_index) {
  const int d = basis.dimension();
  if (element_index < 0 || element_index >= d)
    throw DimensionError("ad_nilpotency_check: element index out of range");
  RationalMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<Rational> col = basis.bracket_coords(element_index, j);
    for (int i = 0; i < d; ++i) m.at(i, j) = col[i];
  }
  if (m.is_zero()) return 1;
  RationalMatrix power = m;
  for (int order = 2; order <= d; ++order) {
    power = power * m;
    if (power.is_zero()) return order;
  }
  throw DomainError("ad_nilpotency_check: ad of element " + std::to_string(element_index) +
                    " is not nilpotent");
}

}  // namespace krsteer
