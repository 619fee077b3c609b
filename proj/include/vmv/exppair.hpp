#pragma once
// Exponent-pair calculus over exact rationals.
//
//   A(p, q) = ( p/(2p+2), (p+q+1)/(2p+2) )     (Weyl differencing step)
//   B(p, q) = ( q - 1/2,  p + 1/2 )            (Poisson step; an involution)
//
// Both maps preserve the admissible region 0 <= p <= 1/2 <= q <= 1.  Words
// act by composition with the rightmost symbol applied first, so
// AB(0,1) = A(B(0,1)) = (1/6, 2/3).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vmv/rational.hpp"

namespace vmv::exppair {

enum class Symbol : char { A = 'A', B = 'B' };

struct ProcessWord {
  std::vector<Symbol> symbols;  // leftmost symbol applied last
  static constexpr std::size_t kMaxLength = 16;

  static ProcessWord parse(std::string_view text);  // throws std::invalid_argument
  std::string str() const;
  std::size_t size() const { return symbols.size(); }
};

struct Provenance {
  enum class Kind { seed, word, derivative_family };
  Kind kind = Kind::seed;
  std::string word;  // for kind == word
  long k = 0;        // for kind == derivative_family
};

struct ExponentPair {
  Rational p, q;
  Provenance prov;
  // Validates admissibility; throws std::domain_error outside the region.
  ExponentPair(Rational p_, Rational q_, Provenance prov_ = {});
};

ExponentPair seed_pair();  // (0, 1)
ExponentPair process_A(const ExponentPair& e);
ExponentPair process_B(const ExponentPair& e);
ExponentPair eval_word(const ProcessWord& w, const ExponentPair& seed);

// The pair attached to the k-th derivative estimate, k >= 3:
//   p = 2/((k-1)^2 (k+2)),  q = 1 - (3k-2)/(k(k-1)(k+2)).
// Any epsilon widening of q is report-time slack, never part of the value.
ExponentPair theorem2_pair(long k);

// (T/N)^p * N^q, the single-sum bound shape; requires T >= N >= 1.
double pair_bound(const ExponentPair& e, double T, double N);

struct SearchResult {
  ProcessWord word;
  ExponentPair pair;
  Rational objective;
};

// Minimizes alpha*p + beta*q over all words of length <= max_len applied to
// (0, 1).  Exhaustive and exact; ties resolve to the shorter word, then
// lexicographically (A before B).
SearchResult search_words(int max_len, const Rational& alpha, const Rational& beta);

}  // namespace vmv::exppair
