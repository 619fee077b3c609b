#pragma once
// Concrete phase families with closed-form derivative oracles:
//
//   monomial:    f(x) = y * x^c
//   logphase:    f(x) = -t * log(x) / (2*pi)      so e(f(n)) = n^(-i t)
//   polynomial:  f(x) = sum_m a_m x^m,  a_m rational (phases reduce exactly)
//
// A function carries the integer range its sums run over: the n with
// n0 < n <= n0 + n1.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vmv/phase.hpp"
#include "vmv/rational.hpp"

namespace vmv::expsum {

struct Interval {
  std::int64_t n0 = 0;  // open left endpoint
  std::int64_t n1 = 0;  // length; integers n0+1 .. n0+n1
};

class PhaseFunction {
 public:
  enum class Family { monomial, logphase, polynomial };
  static constexpr int kMaxDerivative = 16;

  static PhaseFunction monomial(double y, double c, Interval dom);
  static PhaseFunction logphase(double t, Interval dom);
  static PhaseFunction polynomial(std::vector<Rational> coeffs, Interval dom);

  Family family() const { return family_; }
  const Interval& domain() const { return dom_; }
  std::string family_name() const;
  std::map<std::string, double> params() const;

  quad value(quad x) const;                // f(x)
  quad derivative_q(int j, quad x) const;  // f^(j)(x), 0 <= j <= kMaxDerivative
  double derivative(int j, double x) const;

  // (f^(j)(n) / j!) mod 1; exact rational reduction for the polynomial
  // family, 113-bit reduction otherwise.
  Phase scaled_derivative_phase(int j, std::int64_t n) const;
  Phase phase_at(std::int64_t n) const { return scaled_derivative_phase(0, n); }

  PhaseFunction negated() const;  // -f, for conjugation checks

 private:
  PhaseFunction(Family fam, Interval dom) : family_(fam), dom_(dom) {}
  Family family_;
  Interval dom_;
  double y_ = 0, c_ = 0;          // monomial
  double t_ = 0;                  // logphase
  std::vector<Rational> coeffs_;  // polynomial, coeffs_[m] multiplies x^m
};

struct DerivativeBox {
  int k = 0;
  double lambda_k = 0;    // inf |f^(k)| over the interval
  double A = 1;           // sup / inf
  bool lemma1_ok = false; // A * lambda_k <= 1/4
};

// Endpoint evaluation plus a 64-point interior sign grid.  The built-in
// families have |f^(k)| monotone in x, so the endpoints realize inf and
// sup; a sign change or vanishing k-th derivative is refused.
DerivativeBox derivative_box(const PhaseFunction& f, int k);

}  // namespace vmv::expsum
