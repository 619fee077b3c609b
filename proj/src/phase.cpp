#include "vmv/phase.hpp"

#include <quadmath.h>

#include <cmath>

namespace vmv {

quad q_log(quad x) { return logq(x); }
quad q_exp(quad x) { return expq(x); }
quad q_pow(quad base, quad exp) { return powq(base, exp); }
quad q_floor(quad x) { return floorq(x); }
quad q_fabs(quad x) { return fabsq(x); }

quad q_two_pi() {
  static const quad v =
      strtoflt128("6.28318530717958647692528676655900576839433879875", nullptr);
  return v;
}

double q_double(quad x) { return static_cast<double>(x); }

double frac_dist(double x) {
  if (!std::isfinite(x)) throw std::domain_error("frac_dist: non-finite input");
  // round() ties go away from zero; either neighbor gives distance 1/2 there.
  double d = std::fabs(x - std::round(x));
  return d;
}

std::complex<double> e_of(Phase x) {
  double a = 2.0 * M_PI * x.value;
  return {std::cos(a), std::sin(a)};
}

Phase reduce_phase(quad x) {
  quad mag = q_fabs(x);
  if (!(mag <= static_cast<quad>(kPhaseReduceLimit)))
    throw precision_error("reduce_phase: |x| beyond 2^50 reduction range");
  quad f = x - q_floor(x);
  double d = static_cast<double>(f);
  // f can round up to exactly 1.0 when x sits a quad-ulp below an integer;
  // 0 is the same point mod 1.
  if (d >= 1.0) d = 0.0;
  if (d < 0.0) d = 0.0;
  return Phase(d);
}

}  // namespace vmv
