#include "krsteer/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace krsteer {

Polynomial Polynomial::constant(int num_vars, const Rational& c) {
  Polynomial p(num_vars);
  if (c != 0) p.terms_[Monomial(num_vars, 0)] = c;
  return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw DimensionError("Polynomial::variable: index out of range");
  Polynomial p(num_vars);
  Monomial m(num_vars, 0);
  m[index] = 1;
  p.terms_[m] = 1;
  return p;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (unsigned e : m) t += static_cast<int>(e);
    d = std::max(d, t);
  }
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != num_vars_) throw DimensionError("Polynomial::add_term: bad multi-index");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != 0) terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_same(const Polynomial& o) const {
  if (num_vars_ != o.num_vars_) throw DimensionError("Polynomial: variable count mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same(o);
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same(o);
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(num_vars_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same(o);
  Polynomial r(num_vars_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(num_vars_);
      for (int i = 0; i < num_vars_; ++i) m[i] = m1[i] + m2[i];
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(num_vars_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
  return r;
}

Polynomial Polynomial::partial(int var) const {
  Polynomial r(num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * static_cast<long>(m[var]));
  }
  return r;
}

Polynomial Polynomial::antiderivative(int var) const {
  Polynomial r(num_vars_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    d[var] += 1;
    r.add_term(d, c / static_cast<long>(d[var]));
  }
  return r;
}

Polynomial Polynomial::extended(int new_num_vars) const {
  if (new_num_vars < num_vars_) throw DimensionError("Polynomial::extended: shrinking not allowed");
  Polynomial r(new_num_vars);
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    e.resize(new_num_vars, 0);
    r.terms_[e] = c;
  }
  return r;
}

Polynomial Polynomial::substituted(const std::vector<Polynomial>& subs) const {
  if (static_cast<int>(subs.size()) != num_vars_)
    throw DimensionError("Polynomial::substituted: substitution count mismatch");
  int out_vars = subs.empty() ? 0 : subs.front().num_vars();
  Polynomial acc(out_vars);
  for (const auto& [m, c] : terms_) {
    Polynomial t = Polynomial::constant(out_vars, c);
    for (int v = 0; v < num_vars_; ++v)
      for (unsigned k = 0; k < m[v]; ++k) t = t * subs[v];
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::with_var_fixed(int var, const Rational& value) const {
  Polynomial r(num_vars_);
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    for (unsigned k = 0; k < m[var]; ++k) coeff *= value;
    Monomial e = m;
    e[var] = 0;
    r.add_term(e, coeff);
  }
  return r;
}

double Polynomial::eval(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != num_vars_) throw DimensionError("Polynomial::eval: point dimension mismatch");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (int v = 0; v < num_vars_; ++v)
      for (unsigned k = 0; k < m[v]; ++k) t *= point[v];
    acc += t;
  }
  if (!std::isfinite(acc)) throw PoleError("Polynomial::eval: non-finite value");
  return acc;
}

Rational Polynomial::eval_exact(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != num_vars_)
    throw DimensionError("Polynomial::eval_exact: point dimension mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < num_vars_; ++v)
      for (unsigned k = 0; k < m[v]; ++k) t *= point[v];
    acc += t;
  }
  return acc;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    if (first) {
      if (coeff < 0) { os << "-"; coeff = -coeff; }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    bool has_vars = false;
    for (unsigned e : m) has_vars = has_vars || e > 0;
    bool need_coeff = !has_vars || coeff != 1;
    if (need_coeff) os << rational_to_string(coeff);
    bool star = need_coeff;
    for (int v = 0; v < num_vars_; ++v) {
      if (m[v] == 0) continue;
      if (star) os << "*";
      if (v < static_cast<int>(names.size()))
        os << names[v];
      else
        os << "x" << (v + 1);
      if (m[v] > 1) os << "^" << m[v];
      star = true;
    }
  }
  return os.str();
}

PolyVectorField::PolyVectorField(std::vector<Polynomial> components) : components_(std::move(components)) {
  for (const auto& p : components_)
    if (p.num_vars() != dimension())
      throw DimensionError("PolyVectorField: every component must have num_vars == dimension");
}

PolyVectorField PolyVectorField::zero(int dimension) {
  return PolyVectorField(std::vector<Polynomial>(dimension, Polynomial::zero(dimension)));
}

PolyVectorField PolyVectorField::coordinate(int dimension, int index) {
  auto comps = std::vector<Polynomial>(dimension, Polynomial::zero(dimension));
  comps[index] = Polynomial::constant(dimension, 1);
  return PolyVectorField(std::move(comps));
}

bool PolyVectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
  if (dimension() != o.dimension()) throw DimensionError("PolyVectorField: dimension mismatch");
  std::vector<Polynomial> comps;
  comps.reserve(components_.size());
  for (int i = 0; i < dimension(); ++i) comps.push_back(components_[i] + o.components_[i]);
  return PolyVectorField(std::move(comps));
}

PolyVectorField PolyVectorField::scaled(const Rational& c) const {
  std::vector<Polynomial> comps;
  comps.reserve(components_.size());
  for (const auto& p : components_) comps.push_back(p.scaled(c));
  return PolyVectorField(std::move(comps));
}

PolyVectorField PolyVectorField::scaled(const Polynomial& p) const {
  std::vector<Polynomial> comps;
  comps.reserve(components_.size());
  for (const auto& q : components_) comps.push_back(q * p);
  return PolyVectorField(std::move(comps));
}

std::string PolyVectorField::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < dimension(); ++i) {
    if (i) os << "; ";
    os << components_[i].to_string(names);
  }
  os << ")";
  return os.str();
}

}  // namespace krsteer
