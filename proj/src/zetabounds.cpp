#include "vmv/zetabounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmv/exppair.hpp"
#include "vmv/phase.hpp"

namespace vmv::zeta {

namespace {

Rational seg_lo(int k) { return Rational(BigInt(BigInt(k - 1) * (k - 1) + 1), BigInt(k)); }
Rational seg_hi(int k) { return Rational(BigInt(BigInt(k) * k + 1), BigInt(k + 1)); }

Rational curve_49_80(const Rational& tau) { return Rational(-49) / (80 * tau * tau); }

// Certifies a*tau + b <= -49/(80 tau^2) on [lo, hi] from the endpoint checks
// alone: the difference (a*tau + b) + 49/(80 tau^2) is convex on tau > 0
// (positive 1/tau^2 coefficient), so its maximum sits at an endpoint.
bool linear_below_curve(const Rational& a, const Rational& b, const Rational& lo,
                        const Rational& hi) {
  const Rational at_lo = a * lo + b - curve_49_80(lo);
  const Rational at_hi = a * hi + b - curve_49_80(hi);
  return at_lo <= 0 && at_hi <= 0;
}

using bf50 = boost::multiprecision::cpp_bin_float_50;

const bf50& kappa_hp() {
  static const bf50 v = 8 * sqrt(bf50(15)) / 63;
  return v;
}

template <typename F>
double golden_max(double lo, double hi, F g) {
  const double w = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - w * (b - a), d = a + w * (b - a);
  double fc = g(c), fd = g(d);
  for (int i = 0; i < 300 && (b - a) > 1e-14; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - w * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + w * (b - a);
      fd = g(d);
    }
  }
  return g((a + b) / 2);
}

}  // namespace

std::pair<Rational, Rational> akbk(int k) {
  if (k < 3) throw std::domain_error("akbk: need k >= 3");
  const BigInt K = k;
  const Rational A = Rational(BigInt(2), BigInt((K - 1) * (K - 1) * (K + 2)));
  const Rational B =
      -Rational(BigInt(3 * K * K - 3 * K + 2), BigInt(K * (K - 1) * (K - 1) * (K + 2)));
  // The pair is defined by interpolating the two endpoint values; keep that
  // as a construction self-check.
  if (A * seg_lo(k) + B != -Rational(BigInt(1), BigInt(K * (K - 1))) ||
      A * seg_hi(k) + B != -Rational(BigInt(1), BigInt(K * (K + 1))))
    throw std::logic_error("akbk: interpolation identities broken");
  return {A, B};
}

PhiTau PhiTau::build(int k_max) {
  if (k_max < 3) throw std::domain_error("PhiTau: need k_max >= 3");
  PhiTau table;
  table.k_max = k_max;
  for (int k = 3; k <= k_max; ++k) {
    auto [A, B] = akbk(k);
    table.segments.push_back({k, seg_lo(k), seg_hi(k), A, B});
  }
  for (std::size_t i = 0; i + 1 < table.segments.size(); ++i) {
    const PhiSegment& s = table.segments[i];
    const PhiSegment& t = table.segments[i + 1];
    if (s.hi != t.lo || s.slope * s.hi + s.intercept != t.slope * t.lo + t.intercept ||
        t.slope >= s.slope)
      throw std::logic_error("PhiTau: junction invariants broken");
  }
  return table;
}

const Rational& PhiTau::top() const { return segments.back().hi; }

Rational phi_tau(const Rational& tau, const PhiTau& table) {
  if (tau < 2 || tau >= table.top())
    throw std::out_of_range("phi_tau: tau outside [2, " + rat_str(table.top()) + ")");
  // Segments are contiguous and sorted; binary search for lo <= tau < hi.
  std::size_t lo = 0, hi = table.segments.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (table.segments[mid].lo <= tau)
      lo = mid;
    else
      hi = mid;
  }
  const PhiSegment& seg = table.segments[lo];
  return seg.slope * tau + seg.intercept;
}

double kappa() { return kappa_hp().convert_to<double>(); }

std::string kappa_digits(int digits) {
  digits = std::clamp(digits, 1, 45);
  return kappa_hp().str(digits);
}

Rational tau_star_squared(const Rational& sigma) {
  if (sigma >= 1) throw std::domain_error("tau_star_squared: need sigma < 1");
  return Rational(147) / (80 * (1 - sigma));
}

KappaCheck kappa_exact_check() {
  KappaCheck res;
  res.pass = true;
  const double kap = kappa();
  for (double sigma : {0.3, 0.5, 0.7, 0.9}) {
    auto g = [&](double tau) {
      return (1.0 - sigma) / tau - 49.0 / (80.0 * tau * tau * tau);
    };
    const double numeric = golden_max(0.8, 60.0, g);
    const double residual = std::fabs(numeric * std::pow(1.0 - sigma, -1.5) - kap);
    res.max_residual = std::max(res.max_residual, residual);
    if (residual > 1e-10) res.pass = false;
  }
  return res;
}

std::vector<CheckLine> verify_49_80() {
  std::vector<CheckLine> lines;

  // ((k^2+1)/(k(k+1)))^2 * (k+1)/k = (k^2+1)^2 / (k (k+1)^3) against 49/80
  auto ratio = [](int k) {
    const BigInt K = k;
    return Rational(BigInt((K * K + 1) * (K * K + 1)),
                    BigInt(K * (K + 1) * (K + 1) * (K + 1)));
  };
  {
    const Rational r5 = ratio(5);
    lines.push_back({"ratio@k5 == 169/270 > 49/80",
                     r5 == Rational(169, 270) && r5 > Rational(49, 80),
                     rat_str(r5)});
  }
  {
    bool mono = true;
    Rational prev = ratio(5);
    for (int k = 6; k <= 100; ++k) {
      Rational cur = ratio(k);
      if (cur <= prev) {
        mono = false;
        break;
      }
      prev = cur;
    }
    lines.push_back({"ratio strictly increasing (k=5..100)", mono, ""});
  }

  const Rational c59_22(59, 22), c7_2(7, 2), c13_3(13, 3);
  lines.push_back({"(2tau-7)/18 <= -49/(80 tau^2) on [2, 59/22]",
                   linear_below_curve(Rational(1, 9), Rational(-7, 18), 2, c59_22), ""});
  lines.push_back({"(2tau-9)/40 <= -49/(80 tau^2) on [59/22, 7/2]",
                   linear_below_curve(Rational(1, 20), Rational(-9, 40), c59_22, c7_2), ""});
  lines.push_back({"equality at tau = 7/2",
                   Rational(1, 20) * c7_2 - Rational(9, 40) == curve_49_80(c7_2),
                   rat_str(curve_49_80(c7_2))});
  lines.push_back({"-1/20 <= -49/(80 tau^2) on [7/2, 4]",
                   linear_below_curve(0, Rational(-1, 20), c7_2, 4), ""});
  lines.push_back({"(tau-5)/20 <= -49/(80 tau^2) on [4, 13/3]",
                   linear_below_curve(Rational(1, 20), Rational(-1, 4), 4, c13_3), ""});
  return lines;
}

bool rich2_inequality_check(std::span<const double> grid) {
  for (double sigma : grid) {
    if (sigma < 0 || sigma > 0.5) return false;
    const double lhs = (0.5 - sigma) + 0.5 * std::pow(sigma, 1.5);
    const double rhs = 0.5 * std::pow(1.0 - sigma, 1.5);
    if (lhs > rhs + 1e-12) return false;
  }
  return true;
}

std::vector<CheckLine> verify_section4(int k_max) {
  std::vector<CheckLine> lines;
  const PhiTau table = PhiTau::build(k_max);

  {
    bool ok = true;
    for (int k = 3; k <= k_max; ++k) {
      auto [A, B] = akbk(k);  // self-checks the interpolation identities
      const BigInt K = k;
      if (A * seg_hi(k) + B != -Rational(BigInt(1), BigInt(K * (K + 1)))) ok = false;
    }
    lines.push_back({"interpolation identities (k=3.." + std::to_string(k_max) + ")", ok, ""});
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < table.segments.size(); ++i) {
      const PhiSegment& s = table.segments[i];
      const PhiSegment& t = table.segments[i + 1];
      if (s.hi != t.lo) ok = false;
      if (s.slope * s.hi + s.intercept != t.slope * t.lo + t.intercept) ok = false;
    }
    lines.push_back({"continuity (k=3.." + std::to_string(k_max) + ")", ok, ""});
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < table.segments.size(); ++i)
      if (table.segments[i + 1].slope >= table.segments[i].slope) ok = false;
    lines.push_back({"slopes strictly decreasing", ok, ""});
  }
  lines.push_back({"phi(2) == -2/15", phi_tau(2, table) == Rational(-2, 15), ""});
  lines.push_back({"phi(5/2) == -1/12", phi_tau(Rational(5, 2), table) == Rational(-1, 12), ""});

  {
    // phi <= -49/(80 tau^2) on [13/3, 10]: the curve is concave, so checking
    // each linear piece at its ends certifies the whole piece.
    bool ok = true;
    std::vector<Rational> stops;
    stops.push_back(Rational(13, 3));
    for (const PhiSegment& s : table.segments)
      if (s.hi > Rational(13, 3) && s.hi < 10) stops.push_back(s.hi);
    stops.push_back(10);
    for (const Rational& tau : stops)
      if (phi_tau(tau, table) > curve_49_80(tau)) ok = false;
    lines.push_back({"phi <= -49/(80 tau^2) on [13/3, 10]", ok, ""});
  }

  for (CheckLine& line : verify_49_80()) lines.push_back(std::move(line));

  {
    std::vector<double> grid;
    for (int i = 0; i <= 512; ++i) grid.push_back(0.5 * i / 512.0);
    bool ok = rich2_inequality_check(grid);
    // exact equality at both endpoints
    ok = ok && (0.5 - 0.0) + 0.5 * std::pow(0.0, 1.5) == 0.5 * std::pow(1.0, 1.5);
    ok = ok && 0.5 * std::pow(0.5, 1.5) == 0.5 * std::pow(1.0 - 0.5, 1.5);
    lines.push_back({"reflection inequality on [0, 1/2]", ok, ""});
  }

  {
    bool ok = true;
    for (int k = 3; k <= 100; ++k) {
      const exppair::ExponentPair e = exppair::theorem2_pair(k);
      auto [A, B] = akbk(k);
      if (e.p != A || e.q != 1 + A + B) ok = false;
      if (e.q - e.p < Rational(1, 2) || e.p + e.q < Rational(5, 6)) ok = false;
    }
    lines.push_back({"pair consistency (k=3..100)", ok, ""});
  }

  {
    const KappaCheck kc = kappa_exact_check();
    lines.push_back({"kappa maximizer residual <= 1e-10", kc.pass,
                     "max residual " + std::to_string(kc.max_residual)});
  }
  lines.push_back({"tau*^2(sigma=1/2) == 147/40",
                   tau_star_squared(Rational(1, 2)) == Rational(147, 40), ""});
  return lines;
}

ZetaCurvePoint zeta_main_sum(double sigma, double t, double t_budget) {
  if (!(sigma >= 0.0 && sigma <= 1.0))
    throw std::domain_error("zeta_main_sum: need sigma in [0, 1]");
  if (!(t > 0)) throw std::domain_error("zeta_main_sum: need t > 0");
  if (t > t_budget)
    throw precision_error("zeta_main_sum: t beyond the precision budget");

  ZetaCurvePoint pt;
  pt.sigma = sigma;
  pt.t = t;
  std::int64_t M = static_cast<std::int64_t>(std::sqrt(t / (2.0 * M_PI)));
  while (static_cast<double>(M + 1) * static_cast<double>(M + 1) * 2.0 * M_PI <= t) ++M;
  while (M > 1 && static_cast<double>(M) * static_cast<double>(M) * 2.0 * M_PI > t) --M;
  if (M < 1) M = 1;
  pt.M = M;

  const quad qt = static_cast<quad>(t);
  ComplexAccumulator acc;
  for (std::int64_t n = 1; n <= M; ++n) {
    const Phase ph = reduce_phase(-qt * q_log(static_cast<quad>(n)) / q_two_pi());
    const double amp = std::pow(static_cast<double>(n), -sigma);
    acc.add(amp * e_of(ph));
  }
  pt.main_sum_modulus = std::abs(acc.value());
  pt.theory_exponent = kappa() * std::pow(1.0 - sigma, 1.5);
  return pt;
}

ExponentFit empirical_exponent(double sigma, std::span<const double> t_grid,
                               double t_budget) {
  if (t_grid.size() < 4)
    throw std::domain_error("empirical_exponent: need at least 4 grid points");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::domain_error("empirical_exponent: t grid must be strictly increasing");

  ExponentFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double t : t_grid) {
    ZetaCurvePoint pt = zeta_main_sum(sigma, t, t_budget);
    if (!(pt.main_sum_modulus > 0))
      throw std::domain_error("empirical_exponent: degenerate (zero-modulus) point");
    const double x = std::log(t);
    const double y = std::log(pt.main_sum_modulus);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    fit.points.push_back(pt);
  }
  const double n = static_cast<double>(t_grid.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.theory = kappa() * std::pow(1.0 - sigma, 1.5);
  fit.ford = 4.45 * std::pow(1.0 - sigma, 1.5);
  return fit;
}

}  // namespace vmv::zeta
