#include "vmv/phasefun.hpp"

#include <cmath>
#include <iterator>
#include <stdexcept>

namespace vmv::expsum {

namespace {

quad to_quad(const BigInt& v) {
  const bool neg = v < 0;
  BigInt a = abs(v);
  std::vector<std::uint32_t> limbs;  // most significant first
  export_bits(a, std::back_inserter(limbs), 32);
  quad r = 0;
  for (std::uint32_t limb : limbs) r = r * static_cast<quad>(4294967296.0) + limb;
  return neg ? -r : r;
}

quad to_quad(const Rational& r) { return to_quad(rat_num(r)) / to_quad(rat_den(r)); }

// x^j by repeated multiplication; keeps power-of-two ratios between related
// evaluations exact, which the endpoint-ratio checks rely on.
quad q_powi(quad x, int j) {
  quad r = 1;
  for (int i = 0; i < j; ++i) r *= x;
  return r;
}

double factorial(int j) {
  double r = 1;
  for (int i = 2; i <= j; ++i) r *= i;  // exact through 18!
  return r;
}

BigInt binom(int m, int j) {
  BigInt r = 1;
  for (int i = 0; i < j; ++i) {
    r *= (m - i);
    r /= (i + 1);
  }
  return r;
}

void check_order(int j) {
  if (j < 0 || j > PhaseFunction::kMaxDerivative)
    throw std::domain_error("derivative order outside [0, 16]");
}

}  // namespace

PhaseFunction PhaseFunction::monomial(double y, double c, Interval dom) {
  PhaseFunction f(Family::monomial, dom);
  f.y_ = y;
  f.c_ = c;
  return f;
}

PhaseFunction PhaseFunction::logphase(double t, Interval dom) {
  PhaseFunction f(Family::logphase, dom);
  f.t_ = t;
  return f;
}

PhaseFunction PhaseFunction::polynomial(std::vector<Rational> coeffs, Interval dom) {
  PhaseFunction f(Family::polynomial, dom);
  f.coeffs_ = std::move(coeffs);
  return f;
}

std::string PhaseFunction::family_name() const {
  switch (family_) {
    case Family::monomial: return "monomial";
    case Family::logphase: return "logphase";
    case Family::polynomial: return "polynomial";
  }
  return "?";
}

std::map<std::string, double> PhaseFunction::params() const {
  switch (family_) {
    case Family::monomial: return {{"y", y_}, {"c", c_}};
    case Family::logphase: return {{"t", t_}};
    case Family::polynomial: {
      std::map<std::string, double> p;
      for (std::size_t m = 0; m < coeffs_.size(); ++m)
        p["a" + std::to_string(m)] = rat_double(coeffs_[m]);
      return p;
    }
  }
  return {};
}

quad PhaseFunction::value(quad x) const { return derivative_q(0, x); }

quad PhaseFunction::derivative_q(int j, quad x) const {
  check_order(j);
  switch (family_) {
    case Family::monomial: {
      // f^(j) = y * c(c-1)...(c-j+1) * x^(c-j)
      quad coeff = y_;
      for (int i = 0; i < j; ++i) coeff *= static_cast<quad>(c_) - i;
      if (coeff == 0) return 0;
      return coeff * q_pow(x, static_cast<quad>(c_) - j);
    }
    case Family::logphase: {
      // f = -t log(x) / 2pi;  f^(j) = -t/2pi * (-1)^(j-1) (j-1)! x^(-j)
      if (j == 0) return -static_cast<quad>(t_) * q_log(x) / q_two_pi();
      quad coeff = -static_cast<quad>(t_) / q_two_pi() * factorial(j - 1);
      if (j % 2 == 0) coeff = -coeff;
      return coeff / q_powi(x, j);
    }
    case Family::polynomial: {
      // sum_{m >= j} a_m m!/(m-j)! x^(m-j), evaluated by Horner
      const int deg = static_cast<int>(coeffs_.size()) - 1;
      if (deg < j) return 0;
      quad r = 0;
      for (int m = deg; m >= j; --m) {
        quad ff = 1;
        for (int i = 0; i < j; ++i) ff *= m - i;
        r = r * x + to_quad(coeffs_[m]) * ff;
      }
      return r;
    }
  }
  return 0;
}

double PhaseFunction::derivative(int j, double x) const {
  return q_double(derivative_q(j, static_cast<quad>(x)));
}

Phase PhaseFunction::scaled_derivative_phase(int j, std::int64_t n) const {
  check_order(j);
  if (family_ == Family::polynomial) {
    // f^(j)(n)/j! = sum_{m >= j} a_m C(m, j) n^(m-j), all exact
    Rational r = 0;
    const int deg = static_cast<int>(coeffs_.size()) - 1;
    for (int m = j; m <= deg; ++m)
      r += coeffs_[m] * Rational(BigInt(binom(m, j) * pow(BigInt(n), m - j)));
    double d = rat_double(rat_frac(r));
    if (d >= 1.0) d = 0.0;
    return Phase(d);
  }
  return reduce_phase(derivative_q(j, static_cast<quad>(n)) /
                      static_cast<quad>(factorial(j)));
}

PhaseFunction PhaseFunction::negated() const {
  switch (family_) {
    case Family::monomial: return monomial(-y_, c_, dom_);
    case Family::logphase: return logphase(-t_, dom_);
    case Family::polynomial: {
      std::vector<Rational> neg = coeffs_;
      for (Rational& a : neg) a = -a;
      return polynomial(std::move(neg), dom_);
    }
  }
  return *this;
}

DerivativeBox derivative_box(const PhaseFunction& f, int k) {
  if (k < 1 || k > PhaseFunction::kMaxDerivative)
    throw std::domain_error("derivative_box: need 1 <= k <= 16");
  const Interval dom = f.domain();
  if (dom.n1 < 1) throw std::domain_error("derivative_box: empty interval");

  const double x0 = static_cast<double>(dom.n0);
  const double x1 = static_cast<double>(dom.n0 + dom.n1);
  const double d0 = f.derivative(k, x0);
  const double d1 = f.derivative(k, x1);
  if (!std::isfinite(d0) || !std::isfinite(d1))
    throw family_error("derivative_box: k-th derivative unbounded at an endpoint");
  if (d0 == 0 || d1 == 0 || (d0 > 0) != (d1 > 0))
    throw family_error("derivative_box: k-th derivative vanishes or changes sign");
  for (int i = 1; i <= 64; ++i) {
    const double xi = x0 + (x1 - x0) * i / 65.0;
    const double di = f.derivative(k, xi);
    if (di == 0 || (di > 0) != (d0 > 0))
      throw family_error("derivative_box: k-th derivative vanishes or changes sign");
  }

  DerivativeBox box;
  box.k = k;
  const double a0 = std::fabs(d0), a1 = std::fabs(d1);
  box.lambda_k = std::min(a0, a1);
  const double hi = std::max(a0, a1);
  box.A = hi / box.lambda_k;
  box.lemma1_ok = hi <= 0.25;
  return box;
}

}  // namespace vmv::expsum
