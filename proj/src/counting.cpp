#include "vmv/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "vmv/parallel.hpp"

namespace vmv::counting {

using expsum::Interval;
using expsum::PhaseFunction;

std::int64_t h_of(double lambda_k, double A, int k) {
  if (k < 1) throw std::domain_error("h_of: need k >= 1");
  if (!(lambda_k > 0) || !(A >= 1))
    throw std::domain_error("h_of: need lambda_k > 0 and A >= 1");
  // A*lambda <= 1/4 checked exactly: doubles are dyadic rationals.
  const Rational al = rat_from_double(lambda_k) * rat_from_double(A);
  if (al > Rational(1, 4))
    throw std::domain_error("h_of: hypothesis A*lambda_k <= 1/4 fails");

  // Largest h with h^k * (A lambda) <= 1; start from the double estimate and
  // settle the floor with exact integer powers.
  std::int64_t h = static_cast<std::int64_t>(std::pow(A * lambda_k, -1.0 / k));
  if (h < 1) h = 1;
  auto inside = [&](std::int64_t v) {
    return Rational(BigInt(pow(BigInt(v), static_cast<unsigned>(k)))) * al <= 1;
  };
  while (!inside(h)) --h;
  while (inside(h + 1)) ++h;
  return h;  // >= 1 since A*lambda <= 1/4 gives (A*lambda)^(-1/k) >= 4^(1/k) > 1
}

CountSpec make_count_spec(const PhaseFunction& f, int k) {
  if (k < 3) throw std::domain_error("make_count_spec: need k >= 3");
  const expsum::DerivativeBox box = expsum::derivative_box(f, k);
  CountSpec spec;
  spec.f = &f;
  spec.N = f.domain().n1;
  spec.k = k;
  spec.H = h_of(box.lambda_k, box.A, k);
  return spec;
}

namespace {

double circ_dist(double a, double b) {
  double d = std::fabs(a - b);  // a, b in [0,1)
  return std::min(d, 1.0 - d);
}

// Phases u_j(n) = (f^(j)(n)/j!) mod 1 for the active j set, plus the
// per-dimension acceptance radii 2 H^(-j) + guard.  Dimensions whose radius
// already covers the whole circle carry no constraint and are dropped.
struct PairData {
  std::int64_t N = 0;
  std::vector<int> js;
  std::vector<std::vector<double>> u;  // u[d][i], i = 0..N-1
  std::vector<double> tol;             // tol[d]
};

PairData build_pair_data(const CountSpec& spec, std::vector<int> js) {
  if (spec.f == nullptr) throw std::domain_error("count: null phase function");
  if (spec.N < 1 || spec.N != spec.f->domain().n1)
    throw std::domain_error("count: N must match the domain length");
  if (spec.H < 1) throw std::domain_error("count: need H >= 1");
  if (spec.N > kCountCap) throw size_error("count: N beyond the 1e7 cap");

  PairData d;
  d.N = spec.N;
  const std::int64_t n0 = spec.f->domain().n0;
  for (int j : js) {
    const double radius = 2.0 * std::pow(static_cast<double>(spec.H), -j) + kTolGuard;
    if (radius >= 0.5) continue;  // whole circle: no constraint
    d.js.push_back(j);
    d.tol.push_back(radius);
    std::vector<double> uj(static_cast<std::size_t>(spec.N));
    for (std::int64_t i = 0; i < spec.N; ++i)
      uj[static_cast<std::size_t>(i)] = spec.f->scaled_derivative_phase(j, n0 + 1 + i).value;
    d.u.push_back(std::move(uj));
  }
  return d;
}

bool pair_ok(const PairData& d, std::int64_t a, std::int64_t b) {
  // Largest j first: its radius is the tightest, so most pairs exit early.
  for (std::size_t di = d.js.size(); di-- > 0;) {
    if (circ_dist(d.u[di][static_cast<std::size_t>(a)],
                  d.u[di][static_cast<std::size_t>(b)]) > d.tol[di])
      return false;
  }
  return true;
}

std::int64_t count_quadratic(const PairData& d) {
  const std::int64_t N = d.N;
  const std::int64_t chunk = 256;
  const std::size_t nblocks = static_cast<std::size_t>((N + chunk - 1) / chunk);
  std::vector<std::int64_t> partial(nblocks, 0);
  run_blocks(nblocks, [&](std::size_t blk) {
    const std::int64_t lo = static_cast<std::int64_t>(blk) * chunk;
    const std::int64_t hi = std::min(lo + chunk, N);
    std::int64_t local = 0;
    // The predicate is symmetric and reflexive: count a < b twice, a == b once.
    for (std::int64_t a = lo; a < hi; ++a)
      for (std::int64_t b = a + 1; b < N; ++b)
        if (pair_ok(d, a, b)) local += 2;
    partial[blk] = local;
  });
  std::int64_t total = N;
  for (std::int64_t c : partial) total += c;
  return total;
}

// Grid-bucket pass: boxes of side 1/m_d >= tol_d per active dimension, so
// every qualifying pair sits in the same or an adjacent box (mod wraparound).
// Boxes are addressed by a hash of their coordinates; hash collisions only
// add candidates, which the exact predicate then rejects.
std::int64_t count_bucketed(const PairData& d) {
  const std::int64_t N = d.N;
  const std::size_t dims = d.js.size();
  if (dims == 0) return N * N;

  std::vector<std::int64_t> m(dims);
  for (std::size_t di = 0; di < dims; ++di)
    m[di] = std::max<std::int64_t>(1, static_cast<std::int64_t>(1.0 / d.tol[di]));

  auto box_coord = [&](std::size_t di, std::int64_t i) {
    auto c = static_cast<std::int64_t>(d.u[di][static_cast<std::size_t>(i)] * static_cast<double>(m[di]));
    return std::min(c, m[di] - 1);
  };
  auto hash_coords = [](const std::vector<std::int64_t>& c) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the coordinates
    for (std::int64_t v : c) {
      auto x = static_cast<std::uint64_t>(v);
      for (int byte = 0; byte < 8; ++byte) {
        h ^= (x >> (8 * byte)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
    return h;
  };

  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> boxes;
  boxes.reserve(static_cast<std::size_t>(N));
  std::vector<std::int64_t> coords(dims);
  {
    std::vector<std::vector<std::int64_t>> all(static_cast<std::size_t>(N),
                                               std::vector<std::int64_t>(dims));
    for (std::int64_t i = 0; i < N; ++i) {
      for (std::size_t di = 0; di < dims; ++di)
        all[static_cast<std::size_t>(i)][di] = box_coord(di, i);
      boxes[hash_coords(all[static_cast<std::size_t>(i)])].push_back(
          static_cast<std::int32_t>(i));
    }
  }

  const std::int64_t chunk = 1024;
  const std::size_t nblocks = static_cast<std::size_t>((N + chunk - 1) / chunk);
  std::vector<std::int64_t> partial(nblocks, 0);
  run_blocks(nblocks, [&](std::size_t blk) {
    const std::int64_t lo = static_cast<std::int64_t>(blk) * chunk;
    const std::int64_t hi = std::min(lo + chunk, N);
    std::int64_t local = 0;
    std::vector<std::int64_t> base(dims), nb(dims);
    std::vector<std::vector<std::int64_t>> options(dims);
    for (std::int64_t a = lo; a < hi; ++a) {
      for (std::size_t di = 0; di < dims; ++di) {
        base[di] = box_coord(di, a);
        options[di].clear();
        for (std::int64_t off = -1; off <= 1; ++off) {
          std::int64_t c = (base[di] + off + m[di]) % m[di];
          if (std::find(options[di].begin(), options[di].end(), c) == options[di].end())
            options[di].push_back(c);
        }
      }
      // odometer over the neighbor-box product
      std::vector<std::size_t> idx(dims, 0);
      for (;;) {
        for (std::size_t di = 0; di < dims; ++di) nb[di] = options[di][idx[di]];
        auto it = boxes.find(hash_coords(nb));
        if (it != boxes.end())
          for (std::int32_t b : it->second)
            if (pair_ok(d, a, b)) ++local;
        std::size_t di = 0;
        for (; di < dims; ++di) {
          if (++idx[di] < options[di].size()) break;
          idx[di] = 0;
        }
        if (di == dims) break;
      }
    }
    partial[blk] = local;
  });
  std::int64_t total = 0;
  for (std::int64_t c : partial) total += c;
  return total;
}

std::int64_t count_with(const CountSpec& spec, std::vector<int> js, PairStrategy strategy) {
  PairData d = build_pair_data(spec, std::move(js));
  switch (strategy) {
    case PairStrategy::quadratic: return count_quadratic(d);
    case PairStrategy::bucketed: return count_bucketed(d);
    case PairStrategy::automatic: break;
  }
  return d.N <= kQuadraticCap ? count_quadratic(d) : count_bucketed(d);
}

}  // namespace

std::int64_t count_N(const CountSpec& spec, PairStrategy strategy) {
  if (spec.k < 3 || spec.k > PhaseFunction::kMaxDerivative)
    throw std::domain_error("count_N: need 3 <= k <= 16");
  std::vector<int> js;
  for (int j = 1; j <= spec.k - 1; ++j) js.push_back(j);
  return count_with(spec, std::move(js), strategy);
}

std::int64_t count_N1(const CountSpec& spec, PairStrategy strategy) {
  if (spec.k < 3 || spec.k > PhaseFunction::kMaxDerivative)
    throw std::domain_error("count_N1: need 3 <= k <= 16");
  return count_with(spec, {spec.k - 2, spec.k - 1}, strategy);
}

double n2_bound(double N, double lambda_k, double A, int k) {
  if (k < 3 || !(N > 1) || !(lambda_k > 0) || !(A >= 1))
    throw std::domain_error("n2_bound: need k >= 3, N > 1, lambda_k > 0, A >= 1");
  double fact = 1;
  for (int i = 2; i <= k - 1; ++i) fact *= i;
  return std::pow(fact * A, 4.0) *
         (N + lambda_k * N * N + std::pow(lambda_k, -2.0 / k)) * std::log(N);
}

std::int64_t spacing_count(const PhaseFunction& g, std::int64_t N, double theta) {
  if (N < 1) throw std::domain_error("spacing_count: need N >= 1");
  if (!(theta >= 0) || theta > 0.5)
    throw std::domain_error("spacing_count: need 0 <= theta <= 1/2");
  // Monotone hypothesis 0 < g' on (0, N], sampled.
  for (int i = 1; i <= 65; ++i) {
    const double x = static_cast<double>(N) * i / 65.0;
    const double d1 = g.derivative(1, x);
    if (!std::isfinite(d1) || !(d1 > 0))
      throw std::domain_error("spacing_count: derivative hypothesis g' > 0 fails on grid");
  }
  std::int64_t count = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double v = g.phase_at(n).value;
    if (std::min(v, 1.0 - v) <= theta) ++count;
  }
  return count;
}

double spacing_bound(double mu, double A0, double N, double theta) {
  if (!(mu > 0) || !(A0 >= 1) || !(N >= 1) || !(theta >= 0))
    throw std::domain_error("spacing_bound: need mu > 0, A0 >= 1, N >= 1, theta >= 0");
  return (1.0 + A0 * mu * N) * (1.0 + theta / mu);
}

FejerKernel FejerKernel::from_H(std::int64_t H, int k) {
  if (H < 1 || k < 3) throw std::domain_error("FejerKernel: need H >= 1, k >= 3");
  FejerKernel ker;
  ker.B = 4.0 * std::pow(static_cast<double>(H), 2 - k);
  ker.C = 4.0 * std::pow(static_cast<double>(H), 1 - k);
  return ker;
}

double fejer_phi(double x, double y, const FejerKernel& ker) {
  const double fx = std::max(1.0 - frac_dist(x) / ker.B, 0.0);
  const double fy = std::max(1.0 - frac_dist(y) / ker.C, 0.0);
  return fx * fy;
}

namespace {
double sinc_sq(double u) {
  if (u == 0) return 1.0;
  const double s = std::sin(M_PI * u) / (M_PI * u);
  return s * s;
}
}  // namespace

double fejer_coeff(std::int64_t r, std::int64_t s, const FejerKernel& ker) {
  return ker.B * ker.C * sinc_sq(static_cast<double>(r) * ker.B) *
         sinc_sq(static_cast<double>(s) * ker.C);
}

std::vector<NRatioRow> n_ratio_report(const PhaseBuilder& make, int k,
                                      std::span<const std::int64_t> N_grid) {
  std::vector<NRatioRow> rows;
  for (std::int64_t N : N_grid) {
    const PhaseFunction f = make(N);
    const CountSpec spec = make_count_spec(f, k);
    NRatioRow row;
    row.N = spec.N;
    row.k = k;
    row.H = spec.H;
    row.countN = count_N(spec);
    row.countN1 = count_N1(spec);
    if (row.countN > row.countN1)
      throw std::logic_error("n_ratio_report: count_N exceeded count_N1");
    const expsum::DerivativeBox box = expsum::derivative_box(f, k);
    row.n2bound = n2_bound(static_cast<double>(spec.N), box.lambda_k, box.A, k);
    row.ratio = static_cast<double>(row.countN) / row.n2bound;
    rows.push_back(row);
  }
  return rows;
}

GSequences GSequences::printed(double s, int k_hi) {
  if (k_hi < 3) throw std::domain_error("GSequences: need k_hi >= 3");
  GSequences seq;
  double S = s;  // S_k = s(s+1)...(s+k-2); starts at k = 3 with s(s+1)
  for (int k = 3; k <= k_hi; ++k) {
    S *= s + (k - 2);
    seq.a.push_back(3.0 * std::pow(2.0, -1 - k) / (4.0 * S));
    seq.b.push_back(5.0 / (4.0 * S));
  }
  return seq;
}

GSequences GSequences::derived(double s, int k_hi) {
  if (k_hi < 3) throw std::domain_error("GSequences: need k_hi >= 3");
  GSequences seq;
  double S = s;
  for (int k = 3; k <= k_hi; ++k) {
    S *= s + (k - 2);
    seq.a.push_back(0.75 * std::pow(2.0, 1 - s - k) * S);
    seq.b.push_back(1.25 * S);
  }
  return seq;
}

GCheckResult family_check_G(const PhaseFunction& g, double T, const GSequences& seq) {
  if (seq.a.size() != seq.b.size() || seq.a.empty())
    throw std::domain_error("family_check_G: sequence lengths must match and be nonempty");
  const Interval dom = g.domain();
  if (dom.n0 < 1 || dom.n1 < 1 || dom.n1 > dom.n0)
    throw family_error("family_check_G: domain must sit inside (N, 2N]");
  const double N = static_cast<double>(dom.n0);

  GCheckResult res;
  for (std::size_t idx = 0; idx < seq.a.size(); ++idx) {
    const int k = 3 + static_cast<int>(idx);
    const double lo = seq.a[idx] * T * std::pow(N, -k);
    const double hi = seq.b[idx] * T * std::pow(N, -k);
    for (int i = 0; i <= 65; ++i) {
      const double x = static_cast<double>(dom.n0) +
                       static_cast<double>(dom.n1) * i / 65.0;
      const double d = std::fabs(g.derivative(k, x));
      if (d < lo * (1 - 1e-9) || d > hi * (1 + 1e-9)) {
        res.pass = false;
        res.fail_k = k;
        res.fail_x = x;
        res.detail = "|g^(" + std::to_string(k) + ")| outside [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]";
        return res;
      }
    }
  }
  return res;
}

}  // namespace vmv::counting
