#include "krsteer/kr_forms.hpp"

#include <sstream>

namespace krsteer {

bool KRWord::same_pattern(const KRWord& o) const {
  if (steps.size() != o.steps.size()) return false;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i].is_singular() != o.steps[i].is_singular()) return false;
  return true;
}

std::string KRWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) os << ".";
    if (steps[i].is_singular())
      os << "S";
    else
      os << "R(" << rational_to_string(steps[i].constant) << ")";
  }
  return os.str();
}

KRWord KRWord::parse(const std::string& text) {
  KRWord word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    pos = dot == std::string::npos ? text.size() : dot + 1;
    if (tok == "S") {
      word.steps.push_back(KRStep::singular());
    } else if (tok.size() >= 4 && tok.front() == 'R' && tok[1] == '(' && tok.back() == ')') {
      word.steps.push_back(KRStep::regular(rational_from_string(tok.substr(2, tok.size() - 3))));
    } else {
      throw std::invalid_argument("KRWord::parse: bad token '" + tok + "' (expect S or R(c))");
    }
  }
  return word;
}

KRPair kappa3() {
  KRPair p;
  p.k1 = PolyVectorField::coordinate(3, 2);
  std::vector<Polynomial> comps(3, Polynomial::zero(3));
  comps[0] = Polynomial::constant(3, 1);
  comps[1] = Polynomial::variable(3, 2);
  p.k2 = PolyVectorField(std::move(comps));
  return p;
}

KRPair prolong(const KRPair& pair, const KRStep& step) {
  const int n = pair.dimension() + 1;
  PolyVectorField l1 = lift(pair.k1);
  PolyVectorField l2 = lift(pair.k2);
  Polynomial xn = Polynomial::variable(n, n - 1);
  KRPair out;
  out.k1 = PolyVectorField::coordinate(n, n - 1);
  if (step.is_singular()) {
    out.k2 = l1 + l2.scaled(xn);
  } else {
    Polynomial shifted = xn + Polynomial::constant(n, step.constant);
    out.k2 = l1.scaled(shifted) + l2;
  }
  out.word = pair.word;
  out.word.steps.push_back(step);
  return out;
}

KRPair build_kr(const KRWord& word) {
  KRPair p = kappa3();
  for (const auto& step : word.steps) p = prolong(p, step);
  return p;
}

KRPair chained_form(int n) {
  if (n < 3) throw DimensionError("chained_form: dimension must be >= 3");
  KRWord w;
  w.steps.assign(n - 3, KRStep::regular(0));
  return build_kr(w);
}

namespace {

std::vector<int> flag_impl(const JetField& j1, const JetField& j2, int depth, double tol) {
  return derived_flag_dims_jets(j1, j2, depth, tol);
}

}  // namespace

std::vector<int> derived_flag_dims(const PolyVectorField& f1, const PolyVectorField& f2,
                                   std::span<const double> point, std::optional<int> depth,
                                   double rank_rel_tol) {
  const int n = f1.dimension();
  int d = depth.value_or(n - 2);
  return flag_impl(to_jet_field(f1, point, d), to_jet_field(f2, point, d), d, rank_rel_tol);
}

std::vector<int> derived_flag_dims(const SmoothExprField& f1, const SmoothExprField& f2,
                                   std::span<const double> point, std::optional<int> depth,
                                   double rank_rel_tol) {
  const int n = f1.dimension();
  int d = depth.value_or(n - 2);
  return flag_impl(to_jet_field(f1, point, d), to_jet_field(f2, point, d), d, rank_rel_tol);
}

std::vector<int> derived_flag_dims(const KRPair& pair, std::span<const double> point,
                                   std::optional<int> depth, double rank_rel_tol) {
  return derived_flag_dims(pair.k1, pair.k2, point, depth, rank_rel_tol);
}

}  // namespace krsteer
