#include <doctest.h>

#include "helpers.hpp"
#include "mahler/errors.hpp"
#include "mahler/regular.hpp"
#include "oracles.hpp"

using namespace mahler;
using namespace mahler::testing;

namespace {

MahlerEquation tm_eq() { return MahlerEquation(2, {P({1}), P({-1, 1})}); }
MahlerEquation stern_eq() { return MahlerEquation(2, {P({1}), P({-1, -1, -1})}); }
MahlerEquation partitions_eq() { return MahlerEquation(2, {P({1, -1}), P({-1})}); }

Matrix<Rational> scalar(long x) {
  Matrix<Rational> m(1, 1);
  m(0, 0) = x;
  return m;
}

LinearRepresentation tm_rep() { return {2, {1}, {scalar(1), scalar(-1)}, {1}}; }
LinearRepresentation ones_rep(int k) {
  return {k, {1}, std::vector<Matrix<Rational>>(static_cast<std::size_t>(k), scalar(1)), {1}};
}

}  // namespace

TEST_SUITE("regular") {
  TEST_CASE("evaluation examples") {
    CHECK(eval_rep(tm_rep(), 6) == 1);
    CHECK(eval_rep(tm_rep(), 7) == -1);
    CHECK(eval_rep(tm_rep(), 0) == 1);
    CHECK(series_of_rep(tm_rep(), 8).prefix(8) == ints({1, -1, -1, 1, -1, 1, 1, -1}));

    auto zero = tm_rep();
    zero.col = {0};
    CHECK(series_of_rep(zero, 8).is_zero());
  }

  TEST_CASE("digits apply most significant leftmost") {
    // A0 and A1 do not commute, so the convention is visible at n = 2 (10) and n = 1 (01 -> 1).
    Matrix<Rational> a0(2, 2), a1(2, 2);
    a0(0, 0) = 1;
    a0(1, 1) = 2;
    a1(0, 1) = 1;
    a1(1, 0) = 1;
    const LinearRepresentation rep{2, {1, 0}, {a0, a1}, {0, 1}};
    // n = 2: row * A1 * A0 * col
    CHECK(eval_rep(rep, 2) == 2);
    // n = 1: row * A1 * col
    CHECK(eval_rep(rep, 1) == 1);
    // n = 4 = 100: row * A1 * A0 * A0 * col
    CHECK(eval_rep(rep, 4) == 4);
  }

  TEST_CASE("validation") {
    auto bad = tm_rep();
    bad.col = {1, 2};
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = tm_rep();
    bad.matrices.pop_back();
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    LinearRepresentation empty{2, {}, {Matrix<Rational>(), Matrix<Rational>()}, {}};
    CHECK_THROWS_AS(empty.validate(), InvalidInput);
  }

  TEST_CASE("closure examples") {
    auto res = closure_rep(tm_eq(), prefix_oracle(Oracle::thue_morse, 64));
    REQUIRE(res.rep);
    CHECK(res.rep->dim() == 1);
    CHECK(series_of_rep(*res.rep, 256).prefix(256) == oracle::thue_morse(256));

    res = closure_rep(stern_eq(), prefix_oracle(Oracle::stern, 64));
    REQUIRE(res.rep);
    CHECK(res.rep->dim() == 2);
    CHECK(series_of_rep(*res.rep, 64).prefix(64) == oracle::hyperbinary(64));
    CHECK(eval_rep(*res.rep, 4) == 3);

    res = closure_rep(partitions_eq(), prefix_oracle(Oracle::binary_partitions, 64), {8, 8});
    CHECK_FALSE(res.rep);
    CHECK_FALSE(res.reason.empty());

    CHECK_THROWS_AS(closure_rep(tm_eq(), prefix_oracle(Oracle::stern, 64)), InvalidInput);
  }

  TEST_CASE("closure matrices act as Cartier operators") {
    const auto stern = prefix_oracle(Oracle::stern, 256);
    const auto res = closure_rep(stern_eq(), stern);
    REQUIRE(res.rep);
    const auto values = series_of_rep(*res.rep, 256);
    for (int r = 0; r < 2; ++r) {
      const auto section = cartier(values, 2, r);
      for (unsigned long n = 0; n < 64; ++n) CHECK(section.coeff(static_cast<long>(n)) == eval_rep(*res.rep, 2 * n + r));
      CHECK(agree(section, cartier(stern, 2, r)));
    }
  }

  TEST_CASE("representation to equation examples") {
    auto eq = rep_to_equation(tm_rep());
    CHECK(is_associate(eq, tm_eq()));

    const auto stern = closure_rep(stern_eq(), prefix_oracle(Oracle::stern, 64));
    REQUIRE(stern.rep);
    eq = rep_to_equation(*stern.rep);
    CHECK(eq.degree() == 1);
    CHECK(is_associate(eq, stern_eq()));

    CHECK(is_associate(rep_to_equation(ones_rep(2)), MahlerEquation(2, {P({1}), P({-1, -1})})));
    CHECK(is_associate(rep_to_equation(ones_rep(3)), MahlerEquation(3, {P({1}), P({-1, -1, -1})})));
  }

  TEST_CASE("equation from a representation with a non-invariant row") {
    // f(n) = 1 if n == 0, else 0: the row is not fixed by A0.
    Matrix<Rational> zero(1, 1);
    const LinearRepresentation delta{2, {1}, {scalar(1), zero}, {1}};
    const auto eq = rep_to_equation(delta);
    CHECK(verify(eq, series_of_rep(delta, 128)).holds());
  }

  TEST_CASE("round trips preserve the sequence") {
    const std::vector<std::pair<LinearRepresentation, std::vector<Rational>>> cases{
        {tm_rep(), oracle::thue_morse(256)},
        {*closure_rep(stern_eq(), prefix_oracle(Oracle::stern, 64)).rep, oracle::hyperbinary(256)},
        {ones_rep(2), oracle::ones(256)},
    };
    for (const auto& [rep, values] : cases) {
      const auto eq = rep_to_equation(rep);
      const auto back = closure_rep(eq, series_of_rep(rep, 256));
      REQUIRE(back.rep);
      CHECK(series_of_rep(*back.rep, 256).prefix(256) == values);
    }
  }

  TEST_CASE("random representations convert and verify") {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> entry(-1, 1);
    for (int t = 0; t < 10; ++t) {
      const std::size_t d = 1 + static_cast<std::size_t>(t % 3);
      LinearRepresentation rep{2, std::vector<Rational>(d), {Matrix<Rational>(d, d), Matrix<Rational>(d, d)},
                               std::vector<Rational>(d)};
      for (std::size_t i = 0; i < d; ++i) {
        rep.row[i] = entry(rng);
        rep.col[i] = entry(rng);
        for (auto& m : rep.matrices)
          for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
      }
      const auto eq = rep_to_equation(rep);
      CHECK(eq.degree() <= static_cast<int>(d) + 1);
      CHECK(verify(eq, series_of_rep(rep, 256)).holds());
    }
  }
}
