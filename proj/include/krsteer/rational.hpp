#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace krsteer {

/// Exact arbitrary-precision rational. Floats appear only at evaluation time.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q".
inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("rational_from_string: zero denominator");
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace krsteer
