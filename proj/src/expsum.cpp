#include "vmv/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmv/parallel.hpp"

namespace vmv::expsum {

namespace {
constexpr std::int64_t kBlock = 1 << 14;  // fixed, so the fold order never varies
}

std::complex<double> raw_sum(const PhaseFunction& f) {
  const Interval dom = f.domain();
  if (dom.n1 < 0 || dom.n1 > kRawSumLimit)
    throw size_error("raw_sum: interval length beyond the 1e8 cap");
  if (dom.n1 == 0) return {0.0, 0.0};

  const std::size_t nblocks =
      static_cast<std::size_t>((dom.n1 + kBlock - 1) / kBlock);
  std::vector<std::complex<double>> partial(nblocks);
  run_blocks(nblocks, [&](std::size_t b) {
    const std::int64_t lo = dom.n0 + static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t hi = std::min(lo + kBlock, dom.n0 + dom.n1);
    ComplexAccumulator acc;
    for (std::int64_t n = lo + 1; n <= hi; ++n) acc.add(e_of(f.phase_at(n)));
    partial[b] = acc.value();
  });
  ComplexAccumulator total;
  for (const auto& z : partial) total.add(z);
  return total.value();
}

double vdc_bound(double N, const DerivativeBox& box) {
  if (box.k < 2) throw std::domain_error("vdc_bound: need k >= 2");
  if (N < 1) throw std::domain_error("vdc_bound: need N >= 1");
  const double K = std::pow(2.0, box.k) - 2.0;  // 2^k - 2
  const double w = std::pow(2.0, 2 - box.k);    // 2^(2-k)
  return std::pow(box.A, w) * N * std::pow(box.lambda_k, 1.0 / K) +
         std::pow(N, 1.0 - w) * std::pow(box.lambda_k, -1.0 / K);
}

double hb_bound(double N, const DerivativeBox& box) {
  if (box.k < 3) throw std::domain_error("hb_bound: need k >= 3");
  if (N < 1) throw std::domain_error("hb_bound: need N >= 1");
  const double k = box.k;
  const double kk1 = k * (k - 1);
  return N * (std::pow(box.lambda_k, 1.0 / kk1) + std::pow(N, -1.0 / kk1) +
              std::pow(N, -2.0 / kk1) * std::pow(box.lambda_k, -2.0 / (k * kk1)));
}

double vv_bound(double N, const DerivativeBox& box) {
  if (box.k < 3) throw std::domain_error("vv_bound: need k >= 3");
  if (N < 1) throw std::domain_error("vv_bound: need N >= 1");
  const double k = box.k;
  return box.A * (N * std::pow(box.lambda_k, 1.0 / (k * k)) +
                  std::pow(N, 1.0 - 1.0 / (k * (k - 1))) *
                      std::pow(box.lambda_k, -1.0 / (k * k * (k - 1))));
}

std::vector<NamedBound> literature_bounds(double N, const DerivativeBox& box) {
  std::vector<NamedBound> out;
  const double lam = box.lambda_k;

  NamedBound rs{"rs", 0, true, ""};
  switch (box.k) {
    case 4:
      rs.value = N * std::pow(lam, 1.0 / 13) + std::pow(lam, -7.0 / 13);
      break;
    case 8:
      rs.value = N * std::pow(lam, 1.0 / 204) + std::pow(lam, -95.0 / 204);
      break;
    case 9:
      rs.value = N * std::pow(lam, 7.0 / 2640) + std::pow(lam, -1001.0 / 2640);
      break;
    default:
      rs.applicable = false;
      rs.reason = "tabulated only for k in {4, 8, 9}";
  }
  out.push_back(rs);

  NamedBound rob{"robert", 0, true, ""};
  if (box.k < 4) {
    rob.applicable = false;
    rob.reason = "needs k >= 4";
  } else {
    const double k = box.k;
    const double cut = std::pow(lam, -(k - 1) / (2 * k - 3));
    if (N < cut) {
      rob.applicable = false;
      rob.reason = "needs N >= lambda^(-(k-1)/(2k-3))";
    } else {
      const double e = 0.5 / ((k - 1) * (k - 2));
      rob.value = N * (std::pow(lam, e) + std::pow(N, -e));
    }
  }
  out.push_back(rob);
  return out;
}

namespace {

// Everything except the empirical column.
BoundReport bounds_report(const PhaseFunction& f, int k) {
  BoundReport rep;
  rep.family = f.family_name();
  rep.params = f.params();
  rep.N = f.domain().n1;
  rep.k = k;

  const DerivativeBox box = derivative_box(f, k);
  rep.lambda = box.lambda_k;
  rep.A = box.A;

  if (k >= 2)
    rep.bounds["vdc"] = vdc_bound(static_cast<double>(rep.N), box);
  else
    rep.skipped["vdc"] = "needs k >= 2";
  if (k >= 3) {
    rep.bounds["hb"] = hb_bound(static_cast<double>(rep.N), box);
    rep.bounds["vv"] = vv_bound(static_cast<double>(rep.N), box);
  } else {
    rep.skipped["hb"] = "needs k >= 3";
    rep.skipped["vv"] = "needs k >= 3";
  }
  for (const NamedBound& nb : literature_bounds(static_cast<double>(rep.N), box)) {
    if (nb.applicable)
      rep.bounds[nb.name] = nb.value;
    else
      rep.skipped[nb.name] = nb.reason;
  }
  return rep;
}

}  // namespace

BoundReport compare(const PhaseFunction& f, int k) {
  BoundReport rep = bounds_report(f, k);
  rep.empirical = std::abs(raw_sum(f));
  for (const auto& [name, value] : rep.bounds) rep.ratios[name] = rep.empirical / value;
  return rep;
}

std::vector<BoundReport> compare_range(const PhaseFunction& f, int k_lo, int k_hi) {
  if (k_lo > k_hi) throw std::domain_error("compare_range: empty k range");
  const double empirical = std::abs(raw_sum(f));
  std::vector<BoundReport> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    BoundReport rep = bounds_report(f, k);
    rep.empirical = empirical;
    for (const auto& [name, value] : rep.bounds) rep.ratios[name] = empirical / value;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace vmv::expsum
