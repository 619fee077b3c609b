#include "vmv/exppair.hpp"

#include <cmath>
#include <stdexcept>

namespace vmv::exppair {

ProcessWord ProcessWord::parse(std::string_view text) {
  if (text.size() > kMaxLength)
    throw std::invalid_argument("process word longer than 16 symbols");
  ProcessWord w;
  w.symbols.reserve(text.size());
  for (char c : text) {
    if (c == 'A')
      w.symbols.push_back(Symbol::A);
    else if (c == 'B')
      w.symbols.push_back(Symbol::B);
    else
      throw std::invalid_argument(std::string("bad process symbol '") + c +
                                  "': words use A and B only");
  }
  return w;
}

std::string ProcessWord::str() const {
  std::string s;
  s.reserve(symbols.size());
  for (Symbol sym : symbols) s += static_cast<char>(sym);
  return s;
}

ExponentPair::ExponentPair(Rational p_, Rational q_, Provenance prov_)
    : p(std::move(p_)), q(std::move(q_)), prov(std::move(prov_)) {
  const Rational half(1, 2);
  if (p < 0 || p > half || q < half || q > 1)
    throw std::domain_error("exponent pair outside 0 <= p <= 1/2 <= q <= 1: (" +
                            rat_str(p) + ", " + rat_str(q) + ")");
}

ExponentPair seed_pair() { return ExponentPair(0, 1, {Provenance::Kind::seed, "", 0}); }

ExponentPair process_A(const ExponentPair& e) {
  Rational den = 2 * e.p + 2;
  return ExponentPair(e.p / den, (e.p + e.q + 1) / den, e.prov);
}

ExponentPair process_B(const ExponentPair& e) {
  return ExponentPair(e.q - Rational(1, 2), e.p + Rational(1, 2), e.prov);
}

ExponentPair eval_word(const ProcessWord& w, const ExponentPair& seed) {
  ExponentPair cur = seed;
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it)
    cur = (*it == Symbol::A) ? process_A(cur) : process_B(cur);
  cur.prov = {Provenance::Kind::word, w.str(), 0};
  return cur;
}

ExponentPair theorem2_pair(long k) {
  if (k < 3) throw std::domain_error("theorem2_pair: need k >= 3");
  BigInt K = k;
  Rational p = Rational(BigInt(2), BigInt((K - 1) * (K - 1) * (K + 2)));
  Rational q = 1 - Rational(BigInt(3 * K - 2), BigInt(K * (K - 1) * (K + 2)));
  return ExponentPair(std::move(p), std::move(q),
                      {Provenance::Kind::derivative_family, "", k});
}

double pair_bound(const ExponentPair& e, double T, double N) {
  if (!(T >= N) || !(N >= 1))
    throw std::domain_error("pair_bound: need T >= N >= 1");
  return std::pow(T / N, rat_double(e.p)) * std::pow(N, rat_double(e.q));
}

SearchResult search_words(int max_len, const Rational& alpha, const Rational& beta) {
  if (max_len < 0 || static_cast<std::size_t>(max_len) > ProcessWord::kMaxLength)
    throw std::domain_error("search_words: word length cap outside [0, 16]");
  ExponentPair seed_eval = eval_word(ProcessWord{}, seed_pair());
  Rational seed_obj = alpha * seed_eval.p + beta * seed_eval.q;
  SearchResult best{ProcessWord{}, std::move(seed_eval), std::move(seed_obj)};
  // Lexicographic enumeration inside each length (A = bit 0, most significant
  // bit first) + strict improvement makes the shortest-then-lex tie rule
  // automatic.
  for (int len = 1; len <= max_len; ++len) {
    const unsigned long total = 1ul << len;
    for (unsigned long bits = 0; bits < total; ++bits) {
      ProcessWord w;
      w.symbols.reserve(len);
      for (int i = len - 1; i >= 0; --i)
        w.symbols.push_back(((bits >> i) & 1ul) ? Symbol::B : Symbol::A);
      ExponentPair pair = eval_word(w, seed_pair());
      Rational obj = alpha * pair.p + beta * pair.q;
      if (obj < best.objective) best = SearchResult{std::move(w), std::move(pair), std::move(obj)};
    }
  }
  return best;
}

}  // namespace vmv::exppair
