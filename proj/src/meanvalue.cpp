#include "vmv/meanvalue.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vmv/errors.hpp"
#include "vmv/parallel.hpp"

namespace vmv::meanvalue {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_args(int s, int l, std::int64_t P) {
  if (s < 1 || l < 1 || P < 1)
    throw std::domain_error("mean value count: need s >= 1, l >= 1, P >= 1");
}

// x^j for x in [1,P], j in [1,l]; pows[(x-1)*l + (j-1)]
std::vector<BigInt> power_table(std::int64_t P, int l) {
  std::vector<BigInt> pows(static_cast<std::size_t>(P) * l);
  for (std::int64_t x = 1; x <= P; ++x) {
    BigInt v = 1;
    for (int j = 1; j <= l; ++j) {
      v *= x;
      pows[static_cast<std::size_t>(x - 1) * l + (j - 1)] = v;
    }
  }
  return pows;
}

// Odometer over [1,P]^s; writes the power-sum vector of the current tuple.
struct TupleIter {
  std::int64_t P;
  int s, l;
  const std::vector<BigInt>& pows;
  std::vector<std::int64_t> x;
  bool done = false;

  TupleIter(std::int64_t P_, int s_, int l_, const std::vector<BigInt>& pows_,
            std::int64_t first_lo, std::int64_t first_hi)
      : P(P_), s(s_), l(l_), pows(pows_), x(static_cast<std::size_t>(s_), 1),
        lo_(first_lo), hi_(first_hi) {
    x[0] = lo_;
    done = lo_ > hi_;
  }

  void sums(std::vector<BigInt>& out) const {
    for (int j = 0; j < l; ++j) out[j] = 0;
    for (int i = 0; i < s; ++i) {
      const BigInt* row = &pows[static_cast<std::size_t>(x[i] - 1) * l];
      for (int j = 0; j < l; ++j) out[j] += row[j];
    }
  }

  void next() {
    for (int i = s - 1; i >= 0; --i) {
      std::int64_t cap = (i == 0) ? hi_ : P;
      if (x[i] < cap) {
        ++x[i];
        return;
      }
      x[i] = (i == 0) ? lo_ : 1;
    }
    done = true;
  }

 private:
  std::int64_t lo_, hi_;  // range of the leading coordinate
};

// Canonical byte key: per entry a one-byte length prefix, then big-endian
// magnitude bytes.  All power sums are >= s >= 1, so the zero corner case
// never appears.
std::string encode_key(const std::vector<BigInt>& sums, std::vector<unsigned char>& scratch) {
  std::string key;
  for (const BigInt& v : sums) {
    scratch.clear();
    export_bits(v, std::back_inserter(scratch), 8);
    key += static_cast<char>(scratch.size());
    key.append(reinterpret_cast<const char*>(scratch.data()), scratch.size());
  }
  return key;
}

}  // namespace

MeanValueResult jsl_naive(int s, int l, std::int64_t P) {
  check_args(s, l, P);
  if (pow(BigInt(P), 2 * s) > BigInt(static_cast<std::int64_t>(kNaiveScaleLimit)))
    throw size_error("jsl_naive: P^(2s) beyond the 1e8 oracle scale");
  auto t0 = Clock::now();

  auto pows = power_table(P, l);
  std::vector<std::vector<BigInt>> keys;
  TupleIter it(P, s, l, pows, 1, P);
  std::vector<BigInt> sums(static_cast<std::size_t>(l));
  while (!it.done) {
    it.sums(sums);
    keys.push_back(sums);
    it.next();
  }
  // Direct pairwise comparison over all (x, y); no hashing on this route.
  BigInt count = 0;
  for (const auto& a : keys)
    for (const auto& b : keys)
      if (a == b) ++count;

  return {s, l, P, std::move(count), seconds_since(t0)};
}

MeanValueResult jsl_count(int s, int l, std::int64_t P, const CountOptions& opt) {
  check_args(s, l, P);
  const double tuples = std::pow(static_cast<double>(P), s);
  const double per_entry = 8.0 * l + 56.0;  // key bytes + node overhead estimate
  if (tuples * per_entry > static_cast<double>(opt.memory_budget_bytes)) {
    std::int64_t fit = static_cast<std::int64_t>(
        std::pow(static_cast<double>(opt.memory_budget_bytes) / per_entry, 1.0 / s));
    throw size_error("jsl_count: P^s table would exceed the memory budget; "
                     "largest P that fits is about " + std::to_string(fit));
  }
  auto t0 = Clock::now();

  auto pows = power_table(P, l);
  using Map = std::unordered_map<std::string, std::uint64_t>;

  // Partition on the leading coordinate; additive merge keeps the final
  // multiplicity multiset identical for every worker count.
  std::size_t nblocks = std::min<std::size_t>(static_cast<std::size_t>(max_threads()),
                                              static_cast<std::size_t>(P));
  if (nblocks == 0) nblocks = 1;
  std::vector<Map> partial(nblocks);
  run_blocks(nblocks, [&](std::size_t b) {
    std::int64_t lo = 1 + static_cast<std::int64_t>(b) * P / static_cast<std::int64_t>(nblocks);
    std::int64_t hi = static_cast<std::int64_t>(b + 1) * P / static_cast<std::int64_t>(nblocks);
    TupleIter it(P, s, l, pows, lo, hi);
    std::vector<BigInt> sums(static_cast<std::size_t>(l));
    std::vector<unsigned char> scratch;
    Map& local = partial[b];
    while (!it.done) {
      it.sums(sums);
      ++local[encode_key(sums, scratch)];
      it.next();
    }
  });
  Map& table = partial[0];
  for (std::size_t b = 1; b < nblocks; ++b) {
    for (auto& [key, mult] : partial[b]) table[key] += mult;
    partial[b].clear();
  }

  BigInt count = 0;
  for (const auto& [key, mult] : table) count += BigInt(mult) * mult;

  return {s, l, P, std::move(count), seconds_since(t0)};
}

BdgExponent bdg_exponent(int s, int l) {
  if (s < 1 || l < 1) throw std::domain_error("bdg_exponent: need s >= 1, l >= 1");
  const int lsum = l * (l + 1) / 2;
  return {Rational(2 * s - lsum), s >= lsum};
}

TrendReport exponent_trend(int s, int l, std::span<const std::int64_t> P_list,
                           const CountOptions& opt) {
  if (P_list.size() < 3)
    throw std::domain_error("exponent_trend: need at least 3 grid points");
  for (std::size_t i = 1; i < P_list.size(); ++i)
    if (P_list[i] <= P_list[i - 1])
      throw std::domain_error("exponent_trend: P grid must be strictly increasing");

  TrendReport rep;
  rep.s = s;
  rep.l = l;
  rep.P.assign(P_list.begin(), P_list.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::int64_t P : P_list) {
    MeanValueResult r = jsl_count(s, l, P, opt);
    double x = std::log(static_cast<double>(P));
    double y = std::log(r.count.convert_to<double>());
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    rep.counts.push_back(std::move(r.count));
  }
  const double n = static_cast<double>(P_list.size());
  rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const int lsum = l * (l + 1) / 2;
  rep.reference = std::max(static_cast<double>(s), static_cast<double>(2 * s - lsum));
  return rep;
}

}  // namespace vmv::meanvalue
