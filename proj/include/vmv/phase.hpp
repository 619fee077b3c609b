#pragma once
// Phase substrate: distance to the nearest integer, e(x) = exp(2*pi*i*x),
// and the extended-precision mod-1 reduction that runs before any e(f(n))
// evaluation.  __float128 carries a 113-bit significand, past the 106 bits
// a double-double would give; at |x| <= 2^50 the reduced fraction is exact
// to ~2^-63, far inside the 2^-40 budget the sums need.

#include <complex>
#include <cstddef>

#include "vmv/errors.hpp"

namespace vmv {

using quad = __float128;

// quadmath wrappers; definitions keep <quadmath.h> out of this header.
quad q_log(quad x);
quad q_exp(quad x);
quad q_pow(quad base, quad exp);
quad q_floor(quad x);
quad q_fabs(quad x);
quad q_two_pi();
double q_double(quad x);

// A real number mod 1.
struct Phase {
  double value = 0.0;  // invariant: 0 <= value < 1
  Phase() = default;
  explicit Phase(double v) : value(v) {}
};

// min over integers n of |x - n|, in [0, 1/2].  Non-finite x is rejected.
double frac_dist(double x);

// exp(2*pi*i*x)
std::complex<double> e_of(Phase x);

// x mod 1.  Valid for |x| <= kPhaseReduceLimit; beyond that the significand
// no longer covers the fractional bits and the call is refused.
inline constexpr double kPhaseReduceLimit = 1125899906842624.0;  // 2^50
Phase reduce_phase(quad x);

// Kahan-compensated complex accumulation.  After n calls to add() with
// terms z_i, each component of value() is within
// kErrorConstant * n * eps * max_i |partial sum_i| of the exact sum.
class ComplexAccumulator {
 public:
  void add(const std::complex<double>& z) {
    kahan(re_, re_c_, z.real());
    kahan(im_, im_c_, z.imag());
    ++n_;
  }
  std::complex<double> value() const { return {re_, im_}; }
  std::size_t count() const { return n_; }

  static constexpr double kErrorConstant = 4.0;

 private:
  static void kahan(double& sum, double& comp, double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double re_ = 0, im_ = 0;
  double re_c_ = 0, im_c_ = 0;
  std::size_t n_ = 0;
};

}  // namespace vmv
