#pragma once
// Mean-value solution counting:
//
//   J(s, l, P) = #{ x, y in [1,P]^s : sum_i x_i^j = sum_i y_i^j, j = 1..l }
//
// over ordered tuples.  jsl_naive is the quadratic-scan oracle (compares
// every pair of power-sum vectors directly), jsl_count the hashed
// multiplicity counter (sum of r(v)^2 over the power-sum multiset); both
// routes are kept so each can audit the other.

#include <cstdint>
#include <span>
#include <vector>

#include "vmv/rational.hpp"

namespace vmv::meanvalue {

struct MeanValueResult {
  int s = 0, l = 0;
  std::int64_t P = 0;
  BigInt count;
  double elapsed_seconds = 0.0;
};

inline constexpr double kNaiveScaleLimit = 1e8;  // cap on P^(2s)

struct CountOptions {
  std::uint64_t memory_budget_bytes = std::uint64_t(4) << 30;
};

MeanValueResult jsl_naive(int s, int l, std::int64_t P);
MeanValueResult jsl_count(int s, int l, std::int64_t P, const CountOptions& opt = {});

struct BdgExponent {
  Rational exponent;   // 2s - l(l+1)/2
  bool optimal_range;  // s >= l(l+1)/2
};
BdgExponent bdg_exponent(int s, int l);

struct TrendReport {
  int s = 0, l = 0;
  std::vector<std::int64_t> P;
  std::vector<BigInt> counts;
  double slope = 0.0;      // least-squares d log J / d log P
  double reference = 0.0;  // max(s, 2s - l(l+1)/2): diagonal floor vs main term
};
TrendReport exponent_trend(int s, int l, std::span<const std::int64_t> P_list,
                           const CountOptions& opt = {});

}  // namespace vmv::meanvalue
