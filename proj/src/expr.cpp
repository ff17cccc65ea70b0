#include "krsteer/expr.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace krsteer {

namespace {

bool is_const(const Expr& e) { return e->kind == ExprKind::Const; }

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw PoleError(std::string("expr_eval: non-finite value in ") + what);
  return v;
}

double checked_div(double num, double den, const char* what) {
  if (std::fabs(den) < kPoleEps) throw PoleError(std::string("expr_eval: pole in ") + what);
  return checked(num / den, what);
}

}  // namespace

Expr expr_const(const Rational& c) { return std::make_shared<ExprNode>(ExprKind::Const, c); }
Expr expr_const(long c) { return expr_const(Rational(c)); }
Expr expr_var(int index) {
  if (index < 0) throw DimensionError("expr_var: negative index");
  return std::make_shared<ExprNode>(ExprKind::Var, index);
}

bool expr_is_zero(const Expr& e) { return is_const(e) && e->value == 0; }
bool expr_is_one(const Expr& e) { return is_const(e) && e->value == 1; }

Expr expr_add(const Expr& a, const Expr& b) {
  if (expr_is_zero(a)) return b;
  if (expr_is_zero(b)) return a;
  if (is_const(a) && is_const(b)) return expr_const(a->value + b->value);
  return std::make_shared<ExprNode>(ExprKind::Add, a, b);
}

Expr expr_sub(const Expr& a, const Expr& b) {
  if (expr_is_zero(b)) return a;
  if (is_const(a) && is_const(b)) return expr_const(a->value - b->value);
  return std::make_shared<ExprNode>(ExprKind::Sub, a, b);
}

Expr expr_mul(const Expr& a, const Expr& b) {
  if (expr_is_zero(a) || expr_is_zero(b)) return expr_const(0);
  if (expr_is_one(a)) return b;
  if (expr_is_one(b)) return a;
  if (is_const(a) && is_const(b)) return expr_const(a->value * b->value);
  return std::make_shared<ExprNode>(ExprKind::Mul, a, b);
}

Expr expr_div(const Expr& a, const Expr& b) {
  if (expr_is_zero(b)) throw DomainError("expr_div: literal zero denominator");
  if (expr_is_zero(a)) return a;
  if (expr_is_one(b)) return a;
  if (is_const(a) && is_const(b)) return expr_const(a->value / b->value);
  return std::make_shared<ExprNode>(ExprKind::Div, a, b);
}

Expr expr_pow(const Expr& a, int exponent) {
  if (exponent == 0) throw DomainError("expr_pow: zero exponent not representable");
  if (exponent == 1) return a;
  if (is_const(a)) {
    Rational r = 1;
    Rational base = a->value;
    if (exponent < 0) {
      if (base == 0) throw DomainError("expr_pow: zero base with negative exponent");
      base = 1 / base;
    }
    for (int k = 0; k < std::abs(exponent); ++k) r *= base;
    return expr_const(r);
  }
  return std::make_shared<ExprNode>(ExprKind::Pow, a, exponent);
}

Expr expr_sin(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Sin, a, Expr()); }
Expr expr_cos(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Cos, a, Expr()); }
Expr expr_tan(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Tan, a, Expr()); }
Expr expr_sec(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Sec, a, Expr()); }
Expr expr_csc(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Csc, a, Expr()); }
Expr expr_cot(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Cot, a, Expr()); }
Expr expr_atan(const Expr& a) { return std::make_shared<ExprNode>(ExprKind::Atan, a, Expr()); }

namespace {

Expr diff_memo(const Expr& e, int var, std::unordered_map<const ExprNode*, Expr>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  Expr da, db, r;
  switch (e->kind) {
    case ExprKind::Const:
      r = expr_const(0);
      break;
    case ExprKind::Var:
      r = expr_const(e->var == var ? 1 : 0);
      break;
    case ExprKind::Add:
      r = expr_add(diff_memo(e->a, var, memo), diff_memo(e->b, var, memo));
      break;
    case ExprKind::Sub:
      r = expr_sub(diff_memo(e->a, var, memo), diff_memo(e->b, var, memo));
      break;
    case ExprKind::Mul:
      da = diff_memo(e->a, var, memo);
      db = diff_memo(e->b, var, memo);
      r = expr_add(expr_mul(da, e->b), expr_mul(e->a, db));
      break;
    case ExprKind::Div:
      da = diff_memo(e->a, var, memo);
      db = diff_memo(e->b, var, memo);
      // (a/b)' = a'/b - a b' / b^2
      r = expr_sub(expr_div(da, e->b), expr_div(expr_mul(e->a, db), expr_pow(e->b, 2)));
      if (expr_is_zero(da) && expr_is_zero(db)) r = expr_const(0);
      break;
    case ExprKind::Pow: {
      da = diff_memo(e->a, var, memo);
      if (expr_is_zero(da)) { r = expr_const(0); break; }
      Expr inner = (e->exponent == 2) ? e->a : expr_pow(e->a, e->exponent - 1);
      r = expr_mul(expr_mul(expr_const(e->exponent), inner), da);
      break;
    }
    case ExprKind::Sin:
      da = diff_memo(e->a, var, memo);
      r = expr_mul(expr_cos(e->a), da);
      break;
    case ExprKind::Cos:
      da = diff_memo(e->a, var, memo);
      r = expr_mul(expr_mul(expr_const(-1), expr_sin(e->a)), da);
      break;
    case ExprKind::Tan:
      da = diff_memo(e->a, var, memo);
      r = expr_mul(expr_pow(expr_sec(e->a), 2), da);
      break;
    case ExprKind::Sec:
      da = diff_memo(e->a, var, memo);
      r = expr_mul(expr_mul(expr_sec(e->a), expr_tan(e->a)), da);
      break;
    case ExprKind::Csc:
      da = diff_memo(e->a, var, memo);
      r = expr_mul(expr_mul(expr_const(-1), expr_mul(expr_csc(e->a), expr_cot(e->a))), da);
      break;
    case ExprKind::Cot:
      da = diff_memo(e->a, var, memo);
      r = expr_mul(expr_mul(expr_const(-1), expr_pow(expr_csc(e->a), 2)), da);
      break;
    case ExprKind::Atan:
      da = diff_memo(e->a, var, memo);
      r = expr_div(da, expr_add(expr_const(1), expr_pow(e->a, 2)));
      if (expr_is_zero(da)) r = expr_const(0);
      break;
  }
  memo.emplace(e.get(), r);
  return r;
}

double eval_memo(const Expr& e, std::span<const double> point,
                 std::unordered_map<const ExprNode*, double>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  double r = 0.0;
  switch (e->kind) {
    case ExprKind::Const:
      r = to_double(e->value);
      break;
    case ExprKind::Var:
      if (e->var >= static_cast<int>(point.size()))
        throw DimensionError("expr_eval: point dimension too small for variable index");
      r = point[e->var];
      break;
    case ExprKind::Add:
      r = checked(eval_memo(e->a, point, memo) + eval_memo(e->b, point, memo), "+");
      break;
    case ExprKind::Sub:
      r = checked(eval_memo(e->a, point, memo) - eval_memo(e->b, point, memo), "-");
      break;
    case ExprKind::Mul:
      r = checked(eval_memo(e->a, point, memo) * eval_memo(e->b, point, memo), "*");
      break;
    case ExprKind::Div:
      r = checked_div(eval_memo(e->a, point, memo), eval_memo(e->b, point, memo), "/");
      break;
    case ExprKind::Pow: {
      double base = eval_memo(e->a, point, memo);
      int n = e->exponent;
      if (n < 0) {
        base = checked_div(1.0, base, "pow");
        n = -n;
      }
      r = 1.0;
      for (int k = 0; k < n; ++k) r *= base;
      r = checked(r, "pow");
      break;
    }
    case ExprKind::Sin:
      r = std::sin(eval_memo(e->a, point, memo));
      break;
    case ExprKind::Cos:
      r = std::cos(eval_memo(e->a, point, memo));
      break;
    case ExprKind::Tan: {
      double u = eval_memo(e->a, point, memo);
      r = checked_div(std::sin(u), std::cos(u), "tan");
      break;
    }
    case ExprKind::Sec:
      r = checked_div(1.0, std::cos(eval_memo(e->a, point, memo)), "sec");
      break;
    case ExprKind::Csc:
      r = checked_div(1.0, std::sin(eval_memo(e->a, point, memo)), "csc");
      break;
    case ExprKind::Cot: {
      double u = eval_memo(e->a, point, memo);
      r = checked_div(std::cos(u), std::sin(u), "cot");
      break;
    }
    case ExprKind::Atan:
      r = std::atan(eval_memo(e->a, point, memo));
      break;
  }
  memo.emplace(e.get(), r);
  return r;
}

void collect(const Expr& e, std::unordered_set<const ExprNode*>& seen) {
  if (!e || seen.count(e.get())) return;
  seen.insert(e.get());
  if (e->a) collect(e->a, seen);
  if (e->b) collect(e->b, seen);
}

std::string str_memo(const Expr& e, const std::vector<std::string>& names) {
  auto child = [&](const Expr& c) { return str_memo(c, names); };
  auto paren = [&](const Expr& c) {
    if (c->kind == ExprKind::Const && c->value >= 0) return str_memo(c, names);
    if (c->kind == ExprKind::Var) return str_memo(c, names);
    return "(" + str_memo(c, names) + ")";
  };
  switch (e->kind) {
    case ExprKind::Const:
      return rational_to_string(e->value);
    case ExprKind::Var:
      if (e->var < static_cast<int>(names.size())) return names[e->var];
      return "x" + std::to_string(e->var + 1);
    case ExprKind::Add:
      return child(e->a) + " + " + child(e->b);
    case ExprKind::Sub:
      return child(e->a) + " - " + paren(e->b);
    case ExprKind::Mul:
      return paren(e->a) + "*" + paren(e->b);
    case ExprKind::Div:
      return paren(e->a) + "/" + paren(e->b);
    case ExprKind::Pow:
      return paren(e->a) + "^" + std::to_string(e->exponent);
    case ExprKind::Sin:
      return "sin(" + child(e->a) + ")";
    case ExprKind::Cos:
      return "cos(" + child(e->a) + ")";
    case ExprKind::Tan:
      return "tan(" + child(e->a) + ")";
    case ExprKind::Sec:
      return "sec(" + child(e->a) + ")";
    case ExprKind::Csc:
      return "csc(" + child(e->a) + ")";
    case ExprKind::Cot:
      return "cot(" + child(e->a) + ")";
    case ExprKind::Atan:
      return "atan(" + child(e->a) + ")";
  }
  return "?";
}

}  // namespace

Expr expr_diff(const Expr& e, int var) {
  std::unordered_map<const ExprNode*, Expr> memo;
  return diff_memo(e, var, memo);
}

double expr_eval(const Expr& e, std::span<const double> point) {
  std::unordered_map<const ExprNode*, double> memo;
  return eval_memo(e, point, memo);
}

std::vector<double> expr_eval_many(const std::vector<Expr>& es, std::span<const double> point) {
  std::unordered_map<const ExprNode*, double> memo;
  std::vector<double> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(eval_memo(e, point, memo));
  return out;
}

std::size_t expr_dag_size(const std::vector<Expr>& roots) {
  std::unordered_set<const ExprNode*> seen;
  for (const auto& r : roots) collect(r, seen);
  return seen.size();
}

std::string expr_to_string(const Expr& e, const std::vector<std::string>& names) {
  return str_memo(e, names);
}

SmoothExprField SmoothExprField::zero(int dimension) {
  return SmoothExprField(std::vector<Expr>(dimension, expr_const(0)));
}

SmoothExprField SmoothExprField::coordinate(int dimension, int index) {
  std::vector<Expr> comps(dimension, expr_const(0));
  comps[index] = expr_const(1);
  return SmoothExprField(std::move(comps));
}

std::string SmoothExprField::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < dimension(); ++i) {
    if (i) os << "; ";
    os << expr_to_string(components_[i], names);
  }
  os << ")";
  return os.str();
}

}  // namespace krsteer
