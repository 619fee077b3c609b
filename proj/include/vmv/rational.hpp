#pragma once
// Exact rational substrate. cpp_rational keeps every value normalized
// (lowest terms, positive denominator), which the exact verification
// batteries rely on: equality tests below are true equality, not
// tolerance checks.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace vmv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return numerator(r); }
inline BigInt rat_den(const Rational& r) { return denominator(r); }

inline double rat_double(const Rational& r) { return r.convert_to<double>(); }

// Exact: every finite double is a dyadic rational.
inline Rational rat_from_double(double x) { return Rational(x); }

// "num/den", or plain "num" for integers.
inline std::string rat_str(const Rational& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) {
    s += '/';
    s += rat_den(r).str();
  }
  return s;
}

inline BigInt rat_floor(const Rational& r) {
  BigInt q = rat_num(r) / rat_den(r);  // truncates toward zero
  if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

inline Rational rat_pow(Rational base, unsigned exp) {
  Rational out = 1;
  while (exp != 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

// r - floor(r), in [0, 1)
inline Rational rat_frac(const Rational& r) { return r - Rational(rat_floor(r)); }

// distance to the nearest integer, in [0, 1/2]
inline Rational rat_frac_dist(const Rational& r) {
  Rational f = rat_frac(r);
  Rational g = 1 - f;
  return f <= g ? f : g;
}

}  // namespace vmv
