#pragma once
// The piecewise-linear exponent table phi(tau) with exact slopes and
// intercepts
//
//   A_k = 2 / ((k-1)^2 (k+2)),
//   B_k = -(3k^2 - 3k + 2) / (k (k-1)^2 (k+2)),
//
// each linear piece living on [((k-1)^2+1)/k, (k^2+1)/(k+1)); the exact
// inequality battery around the curve -49/(80 tau^2); the constant
// kappa = 8 sqrt(15) / 63; and desk-scale main-sum measurements along the
// critical strip.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vmv/rational.hpp"

namespace vmv::zeta {

// (A_k, B_k), k >= 3; construction re-checks the two interpolation
// conditions that define the pair.
std::pair<Rational, Rational> akbk(int k);

struct PhiSegment {
  int k = 0;
  Rational lo, hi;  // [((k-1)^2+1)/k, (k^2+1)/(k+1))
  Rational slope, intercept;
};
struct PhiTau {
  std::vector<PhiSegment> segments;
  int k_max = 0;
  static PhiTau build(int k_max = 64);
  const Rational& top() const;  // exclusive upper end of the table
};
// Exact evaluation on [2, top); out-of-range tau is refused.
Rational phi_tau(const Rational& tau, const PhiTau& table);

double kappa();  // 8 sqrt(15) / 63 = 0.4918...
std::string kappa_digits(int digits = 35);
Rational tau_star_squared(const Rational& sigma);  // 147 / (80 (1 - sigma))

struct KappaCheck {
  bool pass = false;
  double max_residual = 0;
};
// kappa equals max over tau of ((1-sigma)/tau - (49/80)/tau^3), scaled by
// (1-sigma)^(-3/2): closed form at tau* against a golden-section search.
KappaCheck kappa_exact_check();

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};
// The three-part exact battery around -49/(80 tau^2).
std::vector<CheckLine> verify_49_80();
// Full exact battery: interpolation identities, continuity, slope
// convexity, right-endpoint values, curve domination on [13/3, 10], the
// 49/80 checks, the sigma <= 1/2 reflection inequality, pair consistency,
// and the kappa maximizer.
std::vector<CheckLine> verify_section4(int k_max = 64);
// (1/2 - sigma) + sigma^(3/2)/2 <= (1-sigma)^(3/2)/2 on [0, 1/2];
// equality holds at both endpoints.
bool rich2_inequality_check(std::span<const double> grid);

struct ZetaCurvePoint {
  double sigma = 0, t = 0;
  std::int64_t M = 0;  // main-sum length, max(1, floor(sqrt(t/2pi)))
  double main_sum_modulus = 0;
  double theory_exponent = 0;  // kappa (1-sigma)^(3/2)
};
inline constexpr double kDefaultTBudget = 1e10;
// |sum_{n <= M} n^(-sigma) e(-t log n / 2pi)| with M = floor(sqrt(t/2pi)).
ZetaCurvePoint zeta_main_sum(double sigma, double t, double t_budget = kDefaultTBudget);

struct ExponentFit {
  double slope = 0;
  double theory = 0;  // kappa (1-sigma)^(3/2)
  double ford = 0;    // 4.45 (1-sigma)^(3/2) comparison curve
  std::vector<ZetaCurvePoint> points;
};
ExponentFit empirical_exponent(double sigma, std::span<const double> t_grid,
                               double t_budget = kDefaultTBudget);

}  // namespace vmv::zeta
