#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "mahler/poly.hpp"
#include "mahler/series.hpp"

namespace mahler::testing {

inline Poly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

inline Poly zpow(long e) { return Poly::monomial(1, static_cast<std::size_t>(e)); }

inline std::vector<Rational> ints(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

inline Rational random_rational(std::mt19937& rng, int bound = 5) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Poly random_poly(std::mt19937& rng, int max_degree, bool nonzero = true) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (;;) {
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = random_rational(rng);
    Poly p(std::move(c));
    if (!nonzero || !p.is_zero()) return p;
  }
}

inline LaurentSeries random_series(std::mt19937& rng, long start, long length) {
  std::vector<Rational> c(static_cast<std::size_t>(length));
  for (auto& x : c) x = random_rational(rng);
  return LaurentSeries(start, std::move(c), start + length);
}

/// Orders n sharing a factor with k whose stabilizer M is at most 2. The
/// normalizing polynomial Q has degree growing like k^N with N the lcm of these
/// M, so random equations stay with small N.
inline bool small_set_A_order(long n, int k) {
  return std::gcd(n, static_cast<long>(k)) > 1 && preperiod_stabilizer(k, n) <= 2;
}

}  // namespace mahler::testing
