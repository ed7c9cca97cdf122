#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "mahler/becker.hpp"
#include "mahler/corpus.hpp"
#include "mahler/errors.hpp"
#include "oracles.hpp"

using namespace mahler;
using namespace mahler::testing;

namespace {

MahlerEquation tm_eq() { return MahlerEquation(2, {P({1}), P({-1, 1})}); }
MahlerEquation stern_eq() { return MahlerEquation(2, {P({1}), P({-1, -1, -1})}); }
MahlerEquation partitions_eq() { return MahlerEquation(2, {P({1, -1}), P({-1})}); }
MahlerEquation example_eq() { return MahlerEquation(2, {P({1, 1}), P({-1})}); }

Poly reverse(const Poly& p) {
  auto c = p.coeffs();
  std::reverse(c.begin(), c.end());
  return Poly(std::move(c));
}

bool orders_not_coprime(const Poly& p, int k) {
  const auto profile = cyclotomic_profile(p);
  if (profile.remainder.degree() != 0) return false;
  for (const auto& c : profile.cyclo)
    if (std::gcd(c.order, static_cast<long>(k)) == 1) return false;
  return true;
}

/// A long solution prefix for each corpus item, from constructions that do
/// not go through solve_series.
LaurentSeries long_prefix(const std::string& name, long order) {
  if (name == "thue_morse") return prefix_oracle(Oracle::thue_morse, order);
  if (name == "stern") return prefix_oracle(Oracle::stern, order);
  if (name == "binary_partitions") return prefix_oracle(Oracle::binary_partitions, order);
  if (name == "paradox_k2") return paradox_family(2, order).F.truncate(order);
  if (name == "paradox_k3") return paradox_family(3, order).F.truncate(order);
  return LaurentSeries::from_poly(P({1, -1}), order);
}

}  // namespace

TEST_SUITE("becker") {
  TEST_CASE("orbit norms against cyclotomic reversals") {
    for (long n = 1; n <= 12; ++n) {
      for (int k = 2; k <= 3; ++k) {
        for (long e = 0; e < n; ++e) {
          for (long count = 0; count <= 2; ++count) {
            const long m = n / std::gcd(n, e);
            Poly expected = P({1});
            for (long j = 0; j < count; ++j) {
              expected *= pow(substitute_power(reverse(cyclotomic(m)), static_cast<std::size_t>(checked_power(k, j))),
                              static_cast<unsigned>(euler_phi(n) / euler_phi(m)));
            }
            CAPTURE(n);
            CAPTURE(e);
            CHECK(orbit_norm(n, e, k, count) == expected);
          }
        }
      }
    }
  }

  TEST_CASE("normalize examples") {
    auto norm = normalize(example_eq(), LaurentSeries::from_poly(P({1, -1}), 32));
    REQUIRE(norm.set_A.size() == 1);
    CHECK(norm.set_A[0].order == 2);
    CHECK(norm.set_A[0].multiplicity == 1);
    CHECK(norm.fixed_type.empty());
    CHECK(norm.N == 1);
    CHECK(norm.Q == P({1, -1}));
    CHECK(norm.P == P({1, 1}));
    CHECK(norm.h == P({1}));
    CHECK(norm.gamma == 0);
    CHECK(norm.c == 1);
    CHECK(norm.a == P({1}));
    CHECK(norm.new_eq == MahlerEquation(2, {P({1}), P({-1})}));
    REQUIRE(norm.g_check);
    CHECK(norm.g_check->holds());
    const auto g = normalized_series(norm, LaurentSeries::from_poly(P({1, -1}), 32));
    CHECK(g.prefix(g.order()) == LaurentSeries::from_poly(P({1}), g.order()).prefix(g.order()));

    norm = normalize(paradox_induced_equation(2));
    CHECK(norm.set_A.empty());
    CHECK(norm.Q == P({1}));
    CHECK(norm.gamma == 3);
    CHECK(norm.new_eq == MahlerEquation(2, {P({1}), -zpow(2), zpow(8) * P({1, -1})}));

    norm = normalize(tm_eq());
    CHECK(norm.set_A.empty());
    CHECK(norm.Q == P({1}));
    CHECK(norm.gamma == 0);
    CHECK(norm.new_eq == tm_eq());
  }

  TEST_CASE("normalize invariants on random equations") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> ord(1, 12), mult(0, 2), zp(0, 3), deg(1, 2);
    for (int t = 0; t < 40; ++t) {
      const int k = 2 + t % 3;
      Poly a0 = zpow(zp(rng)) * Poly::constant(1 + t % 4);
      for (int f = 0; f < 2; ++f) {
        const long n = ord(rng);
        if (small_set_A_order(n, k)) a0 *= pow(cyclotomic(n), static_cast<unsigned>(mult(rng)));
      }
      std::vector<Poly> coeffs{a0};
      const int d = deg(rng);
      for (int i = 1; i <= d; ++i) coeffs.push_back(random_poly(rng, 3));
      const MahlerEquation eq(k, coeffs);
      const auto basis = solve_series(eq, 48);
      std::optional<LaurentSeries> f;
      if (!basis.empty()) f = basis.front();
      const auto norm = normalize(eq, f);
      CAPTURE(to_string(eq));
      CHECK(norm.Q.coeff(0) == 1);
      CHECK(norm.P.coeff(0) == 1);
      CHECK(substitute_power(norm.Q, static_cast<std::size_t>(k)) == norm.Q * norm.P * norm.h);
      const Poly& q0 = norm.new_eq.coeff(0);
      CHECK(q0.coeff(0) != 0);
      CHECK(q0.coeff(0) == norm.c);
      CHECK(classify_unity_zeros(cyclotomic_profile(q0), k).set_A.empty());
      if (f) {
        REQUIRE(norm.g_check);
        CHECK(norm.g_check->holds());
      }
    }
  }

  TEST_CASE("becker form search examples") {
    const auto family = paradox_family(2, 256);
    auto found = becker_form_search(family.F.shift(-1), 2);
    REQUIRE(found);
    CHECK(*found == MahlerEquation(2, {P({1}), P({-1}), zpow(2) * P({1, -1})}));

    found = becker_form_search(LaurentSeries::from_poly(P({1}), 128), 3);
    REQUIRE(found);
    CHECK(*found == MahlerEquation(3, {P({1}), P({-1})}));

    found = becker_form_search(prefix_oracle(Oracle::stern, 128), 2);
    REQUIRE(found);
    CHECK(*found == stern_eq());

    CHECK_FALSE(becker_form_search(prefix_oracle(Oracle::binary_partitions, 128), 2).has_value());
    CHECK_THROWS_AS(becker_form_search(prefix_oracle(Oracle::stern, 20), 2), InsufficientData);
  }

  TEST_CASE("certify_regular examples") {
    CHECK(certify_regular(MahlerEquation(2, {zpow(3) * P({1, 1}), P({-1})})).verdict == Verdict::regular);
    const auto one = certify_regular(tm_eq());
    CHECK(one.verdict == Verdict::regular);
    CHECK(one.criterion == "unity_zeros");
    CHECK(certify_regular(partitions_eq()).verdict == Verdict::inconclusive);
    CHECK(certify_regular(MahlerEquation(2, {P({-1, -1, 1}), P({1})})).verdict == Verdict::inconclusive);
  }

  TEST_CASE("certify_irregular examples") {
    const auto cert = certify_irregular(partitions_eq(), prefix_oracle(Oracle::binary_partitions, 64));
    CHECK(cert.verdict == Verdict::not_regular);
    CHECK(cert.criterion == "unbounded_poles");
    CHECK(cert.M == 1);
    CHECK(cert.order == 1);
    CHECK(cert.minimality == "unconditional");
    REQUIRE(cert.equation);
    CHECK(is_associate(*cert.equation, partitions_eq()));

    CHECK(certify_irregular(tm_eq(), prefix_oracle(Oracle::thue_morse, 64)).verdict == Verdict::inconclusive);
    CHECK(certify_irregular(example_eq(), LaurentSeries::from_poly(P({1, -1}), 64)).verdict == Verdict::inconclusive);

    // 1 + z + z^2 vanishes at cube roots of unity, which are fixed by z -> z^4.
    const MahlerEquation cubic(2, {P({1, 1, 1}), P({-1})});
    const auto basis = solve_series(cubic, 64);
    REQUIRE(basis.size() == 1);
    const auto c2 = certify(cubic, basis[0]);
    CHECK(c2.verdict == Verdict::not_regular);
    CHECK(c2.M == 2);
    CHECK(c2.order == 3);

    CHECK_THROWS_AS(certify_irregular(tm_eq(), prefix_oracle(Oracle::stern, 64)), InvalidInput);
  }

  TEST_CASE("witness equation examples") {
    auto norm = normalize(example_eq());
    auto w = witness_equation(norm, MahlerEquation(2, {P({1}), P({-1})}));
    CHECK(w == example_eq());
    CHECK(certify_regular(w).verdict == Verdict::regular);

    BeckerNormalization shifted;
    shifted.k = 3;
    shifted.gamma = 1;
    shifted.Q = P({1});
    w = witness_equation(shifted, MahlerEquation(3, {P({1}), P({-1})}));
    CHECK(w == MahlerEquation(3, {zpow(2), P({-1})}));

    BeckerNormalization plain;
    plain.Q = P({1});
    CHECK(witness_equation(plain, stern_eq()) == stern_eq());

    CHECK_THROWS_AS(witness_equation(plain, example_eq()), InvalidInput);
  }

  TEST_CASE("witness equations pass certify_regular") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> ord(2, 12), mult(0, 2), zp(0, 2), depth(1, 3);
    for (int t = 0; t < 30; ++t) {
      const int k = 2 + t % 3;
      Poly a0 = zpow(zp(rng));
      for (int f = 0; f < 2; ++f) {
        const long n = ord(rng);
        if (small_set_A_order(n, k)) a0 *= pow(cyclotomic(n), static_cast<unsigned>(mult(rng)));
      }
      const auto norm = normalize(MahlerEquation(k, {a0, random_poly(rng, 2)}));
      std::vector<Poly> becker{P({1})};
      const int d = depth(rng);
      for (int i = 1; i <= d; ++i) becker.push_back(random_poly(rng, 3));
      const auto w = witness_equation(norm, MahlerEquation(k, becker));
      CAPTURE(to_string(w));
      CHECK(certify_regular(w).verdict == Verdict::regular);
    }
  }

  TEST_CASE("substitution keeps zeros at orders sharing a factor with k") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> ord(1, 18), mult(1, 2), m_dist(0, 3);
    int built = 0;
    while (built < 50) {
      const int k = 2 + built % 3;
      Poly q = P({1});
      for (int f = 0; f < 3; ++f) {
        const long n = ord(rng);
        if (std::gcd(n, static_cast<long>(k)) > 1) q *= pow(cyclotomic(n), static_cast<unsigned>(mult(rng)));
      }
      if (q.degree() == 0) continue;
      const int m = m_dist(rng);
      CHECK(orders_not_coprime(substitute_power(q, static_cast<std::size_t>(checked_power(k, m))), k));
      ++built;
    }
  }

  TEST_CASE("structure decomposition examples") {
    auto d = structure_decompose(partitions_eq(), prefix_oracle(Oracle::binary_partitions, 16));
    CHECK(d.Gamma == P({1, -1}));
    CHECK(d.rho == 1);
    CHECK(d.delta == 0);
    CHECK(d.J.prefix(16) == LaurentSeries::from_poly(P({1}), 16).prefix(16));

    const auto t = prefix_oracle(Oracle::thue_morse, 32);
    d = structure_decompose(tm_eq(), t);
    CHECK(d.Gamma == P({1}));
    CHECK(agree(d.J, t));

    d = structure_decompose(example_eq(), LaurentSeries::from_poly(P({1, -1}), 16));
    CHECK(d.Gamma == P({1, 1}));
    CHECK(d.J.prefix(16) == LaurentSeries::from_poly(P({1}), 16).prefix(16));

    d = structure_decompose(MahlerEquation(2, {zpow(2) * P({-3, 3}), P({1})}), LaurentSeries::zero(8));
    CHECK(d.rho == -3);
    CHECK(d.delta == 2);
    CHECK(d.Gamma == P({1, -1}));
  }

  TEST_CASE("structure decomposition reproduces F") {
    for (const auto& name : corpus_names()) {
      const auto item = corpus_item(name);
      const auto d = structure_decompose(item.equation, item.prefix);
      auto product = LaurentSeries::from_poly(P({1}), item.prefix.order());
      for (int j = 0; j < d.factors; ++j) {
        product = product * LaurentSeries::from_poly(
                                substitute_power(d.Gamma, static_cast<std::size_t>(checked_power(item.k, j))),
                                item.prefix.order());
      }
      CAPTURE(name);
      CHECK(agree(d.J * invert(product), item.prefix));
    }
  }

  TEST_CASE("reciprocal representations") {
    auto res = reciprocal_rep(P({1, -1}), 2);
    REQUIRE(res.rep);
    CHECK(res.rep->dim() == 1);
    CHECK(series_of_rep(*res.rep, 64).prefix(64) == oracle::ones(64));

    res = reciprocal_rep(P({1}), 3);
    REQUIRE(res.rep);
    std::vector<Rational> delta(64);
    delta[0] = 1;
    CHECK(series_of_rep(*res.rep, 64).prefix(64) == delta);

    res = reciprocal_rep(P({1, 0, -1}), 2);
    REQUIRE(res.rep);
    std::vector<Rational> alternating(64);
    for (std::size_t i = 0; i < 64; i += 2) alternating[i] = 1;
    CHECK(series_of_rep(*res.rep, 64).prefix(64) == alternating);

    CHECK(reciprocal_equation(P({1, -1}), 2) == MahlerEquation(2, {P({1}), P({-1, -1})}));
    CHECK_THROWS_AS(reciprocal_rep(P({2, -1}), 2), InvalidInput);
    CHECK_THROWS_AS(reciprocal_rep(P({1, -2}), 2), InvalidInput);

    // 1 / (1 + z + z^2) = (1 - z) / (1 - z^3) is periodic.
    res = reciprocal_rep(P({1, 1, 1}), 2);
    REQUIRE(res.rep);
    CHECK(series_of_rep(*res.rep, 64).prefix(64) ==
          expand(RationalFunction(P({1}), P({1, 1, 1})), 64).prefix(64));
  }

  TEST_CASE("end-to-end pipeline on regular corpus items") {
    for (const auto& name : corpus_names()) {
      const auto item = corpus_item(name);
      if (item.expected.verdict != Verdict::regular) continue;
      CAPTURE(name);
      const auto f = long_prefix(name, 300);
      REQUIRE(verify(item.equation, f).holds());
      const auto norm = normalize(item.equation, f);
      REQUIRE(norm.g_check);
      CHECK(norm.g_check->holds());
      const auto found = becker_form_for(norm, f, {4, 12, 16}, true);
      REQUIRE(found);
      CHECK(found->equation.coeff(0) == P({1}));
      const auto shifted = with_shift(norm, found->shift);
      const auto r = verify(found->equation, normalized_series(shifted, f));
      CHECK(r.holds());
      CHECK(r.propagated_order >= 128);
      const auto w = witness_equation(shifted, found->equation);
      CHECK(certify_regular(w).verdict == Verdict::regular);
      CHECK(verify(w, f).holds());
    }
  }

  TEST_CASE("shift minimization") {
    const auto item = corpus_item("paradox_k3");
    const auto f = long_prefix("paradox_k3", 300);
    const auto norm = normalize(item.equation, f);
    CHECK(norm.gamma == 8);
    CHECK_FALSE(becker_form_for(norm, f, {4, 12, 16}).has_value());
    const auto found = becker_form_for(norm, f, {4, 12, 16}, true);
    REQUIRE(found);
    CHECK(found->shift == 1);
    CHECK(found->equation == paradox_equation(3));

    const auto k2 = corpus_item("paradox_k2");
    const auto f2 = long_prefix("paradox_k2", 300);
    const auto plain = becker_form_for(normalize(k2.equation, f2), f2, {4, 12, 16});
    REQUIRE(plain);
    CHECK(plain->shift == 3);
  }
}
