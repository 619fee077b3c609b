#pragma once
// Pair-counting battery.  For H = floor((A lambda_k)^(-1/k)) the two-variable
// counts run over the integers m, n of f's domain:
//
//   count_N:  || f^(j)(m)/j! - f^(j)(n)/j! || <= 2 H^(-j)  for j = 1..k-1
//   count_N1: the same with only j = k-2, k-1
//
// plus the first-derivative spacing count, the tent-product kernel
//   phi(x, y) = max(1 - ||x||/B, 0) max(1 - ||y||/C, 0)
// with Fourier coefficients c_{r,s} = B C sinc^2(rB) sinc^2(sC), and the
// count/bound ratio table.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vmv/phasefun.hpp"

namespace vmv::counting {

// floor((A*lambda_k)^(-1/k)); the floor is certified with exact integer
// k-th powers so floating error cannot shift it.  Requires
// 0 < A*lambda_k <= 1/4.
std::int64_t h_of(double lambda_k, double A, int k);

struct CountSpec {
  const expsum::PhaseFunction* f = nullptr;
  std::int64_t N = 0;  // number of integers, from f's domain length
  int k = 3;
  std::int64_t H = 1;
};
// Auto-derives H from the k-th derivative box of f.
CountSpec make_count_spec(const expsum::PhaseFunction& f, int k);

enum class PairStrategy { automatic, quadratic, bucketed };

inline constexpr std::int64_t kQuadraticCap = 100'000;
inline constexpr std::int64_t kCountCap = 10'000'000;
// Thresholds use exact-or-better semantics: boundary hits count as inside,
// with this guard band absorbing the double rounding of the phases.
inline constexpr double kTolGuard = 1e-12;

std::int64_t count_N(const CountSpec& spec, PairStrategy strategy = PairStrategy::automatic);
std::int64_t count_N1(const CountSpec& spec, PairStrategy strategy = PairStrategy::automatic);

// ((k-1)! A)^4 (N + lambda N^2 + lambda^(-2/k)) log N
double n2_bound(double N, double lambda_k, double A, int k);

// #{ 1 <= n <= N : ||g(n)|| <= theta }; requires g' > 0 on (0, N].
std::int64_t spacing_count(const expsum::PhaseFunction& g, std::int64_t N, double theta);
// (1 + A0 mu N)(1 + theta / mu)
double spacing_bound(double mu, double A0, double N, double theta);

struct FejerKernel {
  double B = 0, C = 0;  // invariant: 0 < C <= B <= 4
  static FejerKernel from_H(std::int64_t H, int k);  // B = 4H^(2-k), C = 4H^(1-k)
};
double fejer_phi(double x, double y, const FejerKernel& ker);
double fejer_coeff(std::int64_t r, std::int64_t s, const FejerKernel& ker);

struct NRatioRow {
  std::int64_t N = 0;
  int k = 0;
  std::int64_t H = 0;
  std::int64_t countN = 0, countN1 = 0;
  double n2bound = 0;
  double ratio = 0;  // countN / n2bound
};
using PhaseBuilder = std::function<expsum::PhaseFunction(std::int64_t)>;
std::vector<NRatioRow> n_ratio_report(const PhaseBuilder& make, int k,
                                      std::span<const std::int64_t> N_grid);

// Derivative envelope membership: a_k T N^(-k) <= |g^(k)(x)| <= b_k T N^(-k)
// on g's domain, with N its left endpoint, for k = 3 .. 3+len(a)-1.
struct GSequences {
  std::vector<double> a, b;  // index 0 corresponds to k = 3

  // Printed reduction constants, exponent read literally as 2^(-1-k):
  //   a_k = 3*2^(-1-k) / (4 S_k),  b_k = 5/(4 S_k),  S_k = s(s+1)...(s+k-2)
  static GSequences printed(double s, int k_hi);
  // Constants recomputed from the monomial y x^s reduction on (N, 2N]:
  //   a_k = (3/4) 2^(1-s-k) S_k,   b_k = (5/4) S_k
  static GSequences derived(double s, int k_hi);
};
struct GCheckResult {
  bool pass = true;
  int fail_k = 0;
  double fail_x = 0;
  std::string detail;
};
GCheckResult family_check_G(const expsum::PhaseFunction& g, double T,
                            const GSequences& seq);

}  // namespace vmv::counting
