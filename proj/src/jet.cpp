#include "krsteer/jet.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <mutex>

namespace krsteer {

namespace {

std::uint64_t pack(const Monomial& m) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < m.size(); ++i) key |= static_cast<std::uint64_t>(m[i]) << (8 * i);
  return key;
}

void enumerate(int nvars, int order, Monomial& cur, int var, int remaining, std::vector<Monomial>& out) {
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[var] = e;
    enumerate(nvars, order, cur, var + 1, remaining - e, out);
  }
  cur[var] = 0;
}

}  // namespace

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || nvars > 8 || order < 0 || order > 12)
    throw DimensionError("JetSpace: supports 1..8 variables and order 0..12");
  Monomial cur(nvars, 0);
  enumerate(nvars, order, cur, 0, order, monomials_);
  // graded order: sort by total degree, then lexicographic
  std::sort(monomials_.begin(), monomials_.end(), [](const Monomial& a, const Monomial& b) {
    int da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  });
  degrees_.reserve(monomials_.size());
  packed_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    int d = 0;
    for (unsigned e : monomials_[i]) d += e;
    degrees_.push_back(d);
    packed_.push_back(pack(monomials_[i]));
    index_[packed_.back()] = static_cast<int>(i);
  }
}

const JetSpace& JetSpace::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<JetSpace>(new JetSpace(nvars, order))).first;
  return *it->second;
}

int JetSpace::index_of_packed(std::uint64_t key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

Jet Jet::constant(int nvars, int order, double v) {
  Jet j(nvars, order);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(int nvars, int order, int index, double v) {
  Jet j(nvars, order);
  j.c_[0] = v;
  if (order >= 1) {
    Monomial m(nvars, 0);
    m[index] = 1;
    j.c_[j.space_->index_of_packed(pack(m))] = 1.0;
  }
  return j;
}

bool Jet::is_zero() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

Jet Jet::truncated(int order) const {
  if (order == this->order()) return *this;
  if (order > this->order()) throw DimensionError("Jet::truncated: cannot raise order");
  Jet out(nvars(), order);
  for (int i = 0; i < out.space_->size(); ++i) {
    int src = space_->index_of_packed(out.space_->packed(i));
    out.c_[i] = c_[src];
  }
  return out;
}

Jet Jet::operator+(const Jet& o) const {
  if (space_ == o.space_) {
    Jet out = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
    return out;
  }
  int ord = std::min(order(), o.order());
  return truncated(ord) + o.truncated(ord);
}

Jet Jet::operator-(const Jet& o) const { return *this + o.scaled(-1.0); }

Jet Jet::scaled(double s) const {
  Jet out = *this;
  for (double& v : out.c_) v *= s;
  return out;
}

Jet Jet::mul(const Jet& o, int out_order) const {
  if (order() < out_order || o.order() < out_order)
    throw DimensionError("Jet::mul: operands carry too little order for the requested product");
  const Jet a = order() > out_order ? truncated(out_order) : *this;
  const Jet b = o.order() > out_order ? o.truncated(out_order) : o;
  Jet out(nvars(), out_order);
  const JetSpace& os = *out.space_;
  for (int i = 0; i < a.space_->size(); ++i) {
    if (a.c_[i] == 0.0) continue;
    int di = a.space_->degree(i);
    for (int j = 0; j < b.space_->size(); ++j) {
      if (b.c_[j] == 0.0) continue;
      if (di + b.space_->degree(j) > out_order) continue;
      int k = os.index_of_packed(a.space_->packed(i) + b.space_->packed(j));
      out.c_[k] += a.c_[i] * b.c_[j];
    }
  }
  return out;
}

Jet Jet::partial(int var) const {
  if (order() == 0) throw DimensionError("Jet::partial: order 0 jet has no derivative data");
  Jet out(nvars(), order() - 1);
  for (int i = 0; i < space_->size(); ++i) {
    const Monomial& m = space_->monomial(i);
    if (m[var] == 0 || c_[i] == 0.0) continue;
    Monomial d = m;
    d[var] -= 1;
    int k = out.space_->index_of_packed(pack(d));
    out.c_[k] += c_[i] * m[var];
  }
  return out;
}

namespace {

// Univariate truncated series helpers for scalar composition coefficients.
using Series = std::vector<double>;  // s[k] = coefficient of offset^k

Series series_mul(const Series& a, const Series& b, int order) {
  Series r(order + 1, 0.0);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series series_inv(const Series& a, int order) {
  if (std::fabs(a[0]) < kPoleEps) throw PoleError("jet: pole in division");
  Series r(order + 1, 0.0);
  r[0] = 1.0 / a[0];
  for (int k = 1; k <= order; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s / a[0];
  }
  return r;
}

Series sin_series(double x, int order) {
  Series r(order + 1);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    double d = (k % 4 == 0) ? std::sin(x) : (k % 4 == 1) ? std::cos(x) : (k % 4 == 2) ? -std::sin(x) : -std::cos(x);
    r[k] = d / fact;
  }
  return r;
}

Series cos_series(double x, int order) {
  Series r(order + 1);
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    double d = (k % 4 == 0) ? std::cos(x) : (k % 4 == 1) ? -std::sin(x) : (k % 4 == 2) ? -std::cos(x) : std::sin(x);
    r[k] = d / fact;
  }
  return r;
}

Series atan_series(double x, int order) {
  // f' = 1/(1 + (x + s)^2); integrate termwise.
  Series den(order + 1, 0.0);
  den[0] = 1.0 + x * x;
  if (order >= 1) den[1] = 2.0 * x;
  if (order >= 2) den[2] = 1.0;
  Series d = series_inv(den, order);
  Series r(order + 1, 0.0);
  r[0] = std::atan(x);
  for (int k = 1; k <= order; ++k) r[k] = d[k - 1] / k;
  return r;
}

Series scalar_series(ExprKind fn, double x, int order) {
  switch (fn) {
    case ExprKind::Sin:
      return sin_series(x, order);
    case ExprKind::Cos:
      return cos_series(x, order);
    case ExprKind::Tan:
      return series_mul(sin_series(x, order), series_inv(cos_series(x, order), order), order);
    case ExprKind::Sec:
      return series_inv(cos_series(x, order), order);
    case ExprKind::Csc:
      return series_inv(sin_series(x, order), order);
    case ExprKind::Cot:
      return series_mul(cos_series(x, order), series_inv(sin_series(x, order), order), order);
    case ExprKind::Atan:
      return atan_series(x, order);
    default:
      throw DimensionError("scalar_series: not a unary function kind");
  }
}

}  // namespace

Jet jet_compose(ExprKind fn, const Jet& a, int out_order) {
  Series cs = scalar_series(fn, a.value(), out_order);
  for (double v : cs)
    if (!std::isfinite(v)) throw PoleError("jet: non-finite composition coefficient");
  Jet n = a.truncated(out_order);
  n.coeff(0) = 0.0;  // nilpotent part
  // Horner: c0 + n(c1 + n(c2 + ...))
  Jet acc = Jet::constant(a.nvars(), out_order, cs[out_order]);
  for (int k = out_order - 1; k >= 0; --k) {
    acc = n.mul(acc, out_order);
    acc.coeff(0) += cs[k];
  }
  return acc;
}

Jet jet_div(const Jet& a, const Jet& b, int out_order) {
  Jet bt = b.truncated(std::min(b.order(), out_order));
  if (std::fabs(bt.value()) < kPoleEps) throw PoleError("jet: pole in division");
  // 1/b = (1/b0) sum_k (-m/b0)^k with m the nilpotent part of b.
  double b0 = bt.value();
  Jet m = bt;
  m.coeff(0) = 0.0;
  Jet term = Jet::constant(a.nvars(), out_order, 1.0);
  Jet inv = term;
  for (int k = 1; k <= out_order; ++k) {
    term = term.mul(m, out_order).scaled(-1.0 / b0);
    inv = inv + term;
  }
  inv = inv.scaled(1.0 / b0);
  return a.mul(inv, out_order);
}

Jet jet_pow(const Jet& a, int exponent, int out_order) {
  if (exponent == 0) throw DomainError("jet_pow: zero exponent");
  Jet base = a.truncated(std::min(a.order(), out_order));
  if (exponent < 0) {
    base = jet_div(Jet::constant(a.nvars(), out_order, 1.0), base, out_order);
    exponent = -exponent;
  }
  Jet acc = base;
  for (int k = 1; k < exponent; ++k) acc = acc.mul(base, out_order);
  return acc;
}

namespace {

Jet expr_to_jet_memo(const Expr& e, std::span<const double> point, int order,
                     std::unordered_map<const ExprNode*, Jet>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  const int n = static_cast<int>(point.size());
  Jet r;
  switch (e->kind) {
    case ExprKind::Const:
      r = Jet::constant(n, order, to_double(e->value));
      break;
    case ExprKind::Var:
      r = Jet::variable(n, order, e->var, point[e->var]);
      break;
    case ExprKind::Add:
      r = expr_to_jet_memo(e->a, point, order, memo) + expr_to_jet_memo(e->b, point, order, memo);
      break;
    case ExprKind::Sub:
      r = expr_to_jet_memo(e->a, point, order, memo) - expr_to_jet_memo(e->b, point, order, memo);
      break;
    case ExprKind::Mul:
      r = expr_to_jet_memo(e->a, point, order, memo).mul(expr_to_jet_memo(e->b, point, order, memo), order);
      break;
    case ExprKind::Div:
      r = jet_div(expr_to_jet_memo(e->a, point, order, memo), expr_to_jet_memo(e->b, point, order, memo), order);
      break;
    case ExprKind::Pow:
      r = jet_pow(expr_to_jet_memo(e->a, point, order, memo), e->exponent, order);
      break;
    default:
      r = jet_compose(e->kind, expr_to_jet_memo(e->a, point, order, memo), order);
      break;
  }
  memo.emplace(e.get(), r);
  return r;
}

}  // namespace

Jet expr_to_jet(const Expr& e, std::span<const double> point, int order) {
  std::unordered_map<const ExprNode*, Jet> memo;
  return expr_to_jet_memo(e, point, order, memo);
}

Jet poly_to_jet(const Polynomial& p, std::span<const double> point, int order) {
  const int n = p.num_vars();
  if (static_cast<int>(point.size()) != n) throw DimensionError("poly_to_jet: point dimension mismatch");
  Jet acc(n, order);
  for (const auto& [m, coeff] : p.terms()) {
    Jet t = Jet::constant(n, order, to_double(coeff));
    for (int v = 0; v < n; ++v)
      for (unsigned k = 0; k < m[v]; ++k) t = t.mul(Jet::variable(n, order, v, point[v]), order);
    acc = acc + t;
  }
  return acc;
}

std::vector<double> JetField::values() const {
  std::vector<double> v(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) v[i] = comps[i].value();
  return v;
}

JetField to_jet_field(const PolyVectorField& f, std::span<const double> point, int order) {
  JetField out;
  out.order = order;
  out.comps.reserve(f.dimension());
  for (int i = 0; i < f.dimension(); ++i) out.comps.push_back(poly_to_jet(f.component(i), point, order));
  return out;
}

JetField to_jet_field(const SmoothExprField& f, std::span<const double> point, int order) {
  JetField out;
  out.order = order;
  out.comps.reserve(f.dimension());
  std::unordered_map<const ExprNode*, Jet> memo;
  for (int i = 0; i < f.dimension(); ++i) out.comps.push_back(expr_to_jet_memo(f.component(i), point, order, memo));
  return out;
}

JetField jet_bracket(const JetField& f, const JetField& g) {
  const int dim = static_cast<int>(f.comps.size());
  if (dim != static_cast<int>(g.comps.size())) throw DimensionError("jet_bracket: dimension mismatch");
  int out_order = std::min(f.order, g.order) - 1;
  if (out_order < 0) throw DimensionError("jet_bracket: insufficient jet order");
  JetField out;
  out.order = out_order;
  out.comps.reserve(dim);
  const int n = f.comps.front().nvars();
  for (int i = 0; i < dim; ++i) {
    Jet acc(n, out_order);
    for (int j = 0; j < n; ++j) {
      acc = acc + f.comps[j].mul(g.comps[i].partial(j), out_order);
      acc = acc - g.comps[j].mul(f.comps[i].partial(j), out_order);
    }
    out.comps.push_back(std::move(acc));
  }
  return out;
}

namespace {

int value_rank(const std::vector<const JetField*>& fields, int dim, double rel_tol) {
  Eigen::MatrixXd m(dim, static_cast<int>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j)
    for (int i = 0; i < dim; ++i) m(i, static_cast<int>(j)) = fields[j]->comps[i].value();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (smax == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    double rel = sv(i) / smax;
    if (rel > rel_tol * 10 || rel == 1.0) {
      ++rank;
    } else if (rel > rel_tol / 10) {
      throw DomainError("derived_flag_dims: ambiguous rank decision near tolerance");
    }
  }
  return rank;
}

}  // namespace

std::vector<int> derived_flag_dims_jets(const JetField& g1, const JetField& g2, int depth,
                                        double rank_rel_tol) {
  if (depth < 0) throw DimensionError("derived_flag_dims: depth must be >= 0");
  const int dim = static_cast<int>(g1.comps.size());
  std::vector<JetField> fields{g1, g2};
  std::vector<int> dims;
  std::size_t level_start = 0;  // first index of the previous level's new fields
  for (int level = 0; level <= depth; ++level) {
    std::vector<const JetField*> ptrs;
    ptrs.reserve(fields.size());
    for (const auto& f : fields) ptrs.push_back(&f);
    dims.push_back(value_rank(ptrs, dim, rank_rel_tol));
    if (level == depth) break;
    std::size_t count = fields.size();
    std::vector<JetField> fresh;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = std::max(i + 1, level_start); j < count; ++j) {
        JetField br = jet_bracket(fields[i], fields[j]);
        bool zero = true;
        for (const auto& c : br.comps) zero = zero && c.is_zero();
        if (!zero) fresh.push_back(std::move(br));
      }
    }
    level_start = count;
    for (auto& f : fresh) fields.push_back(std::move(f));
  }
  return dims;
}

}  // namespace krsteer
