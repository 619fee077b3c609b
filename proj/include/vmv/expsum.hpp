#pragma once
// Exponential-sum evaluation and the k-th derivative bound menagerie.  With
// lambda = lambda_k and A from a DerivativeBox over an interval of length N:
//
//   vdc:    A^(2^(2-k)) N lambda^(1/(2^k-2)) + N^(1-2^(2-k)) lambda^(-1/(2^k-2))
//   hb:     N (lambda^(1/k(k-1)) + N^(-1/k(k-1)) + N^(-2/k(k-1)) lambda^(-2/k^2(k-1)))
//   vv:     A (N lambda^(1/k^2) + N^(1-1/k(k-1)) lambda^(-1/k^2(k-1)))
//   rs:     k=4: N lambda^(1/13) + lambda^(-7/13)
//           k=8: N lambda^(1/204) + lambda^(-95/204)
//           k=9: N lambda^(7/2640) + lambda^(-1001/2640)
//   robert: k>=4: N (lambda^(1/2(k-1)(k-2)) + N^(-1/2(k-1)(k-2))),
//           valid only when N >= lambda^(-(k-1)/(2k-3))
//
// All bounds are reported at epsilon = 0; report consumers attach N^eps
// slack separately.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vmv/phasefun.hpp"

namespace vmv::expsum {

inline constexpr std::int64_t kRawSumLimit = 100'000'000;

// sum over n0 < n <= n0+n1 of e(f(n)), Kahan-accumulated in fixed blocks.
std::complex<double> raw_sum(const PhaseFunction& f);

double vdc_bound(double N, const DerivativeBox& box);  // k >= 2
double hb_bound(double N, const DerivativeBox& box);   // k >= 3
double vv_bound(double N, const DerivativeBox& box);   // k >= 3

struct NamedBound {
  std::string name;
  double value = 0;
  bool applicable = true;
  std::string reason;  // set when not applicable
};
std::vector<NamedBound> literature_bounds(double N, const DerivativeBox& box);

struct BoundReport {
  std::string family;
  std::map<std::string, double> params;
  std::int64_t N = 0;
  int k = 0;
  double lambda = 0, A = 1;
  double empirical = 0;                       // |raw_sum|
  std::map<std::string, double> bounds;       // applicable bounds by key
  std::map<std::string, std::string> skipped; // key -> reason
  std::map<std::string, double> ratios;       // empirical / bound
};

BoundReport compare(const PhaseFunction& f, int k);
std::vector<BoundReport> compare_range(const PhaseFunction& f, int k_lo, int k_hi);

}  // namespace vmv::expsum
