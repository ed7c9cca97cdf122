#include "mahler/corpus.hpp"

#include "mahler/errors.hpp"
#include "mahler/regular.hpp"

namespace mahler {

namespace {

Poly zk(long e) { return Poly::monomial(1, static_cast<std::size_t>(e)); }

using PolyMatrix = std::array<std::array<Poly, 2>, 2>;

PolyMatrix multiply_truncated(const PolyMatrix& a, const PolyMatrix& b, std::size_t order) {
  PolyMatrix c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = truncate(a[i][0] * b[0][j] + a[i][1] * b[1][j], order);
  return c;
}

}  // namespace

ParadoxFamily paradox_family(int k, long order) {
  if (k < 2) throw InvalidInput("paradox_family needs k >= 2");
  if (order < 4) throw InvalidInput("paradox_family needs order >= 4");
  ParadoxFamily out;
  out.k = k;
  const Poly one = Poly::constant(1);
  const Poly lin = one - Poly::z();
  out.M = {{{lin + zk(k - 1), -(zk(static_cast<long>(k) * k - k) * lin)}, {one, Poly{}}}};
  long levels = 1;
  for (long reach = 1; reach < order; reach *= k) ++levels;
  const auto n = static_cast<std::size_t>(order);
  PolyMatrix product{{{one, Poly{}}, {Poly{}, one}}};
  for (long j = 0; j < levels; ++j) {
    const auto s = static_cast<std::size_t>(checked_power(k, j));
    PolyMatrix sub;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) sub[a][b] = substitute_power(out.M[a][b], s);
    product = multiply_truncated(product, sub, n);
  }
  const Poly h = product[0][0];
  if (h.coeff(0) != 1) throw InvariantViolation("paradox family: H(0) != 1");
  out.H = LaurentSeries::from_poly(h, order);
  std::vector<Rational> f0{1};
  for (long i = 0; i < order; ++i) f0.push_back(h.coeff(static_cast<std::size_t>(i)));
  out.F0 = LaurentSeries(-1, f0, order);
  out.F = LaurentSeries(0, std::move(f0), order + 1);
  return out;
}

MahlerEquation paradox_equation(int k) {
  const Poly lin = Poly::constant(1) - Poly::z();
  const long k2 = static_cast<long>(k) * k;
  return MahlerEquation(k, {Poly::constant(1), -(lin + zk(k - 1)), zk(k2 - k) * lin});
}

MahlerEquation paradox_induced_equation(int k) {
  const Poly lin = Poly::constant(1) - Poly::z();
  const long k2 = static_cast<long>(k) * k;
  return MahlerEquation(k, {zk(k2 - 1), -(zk(k2 - k) * (lin + zk(k - 1))), zk(k2 - k) * lin});
}

bool independence_check(int k, int deg_max, long terms) {
  const ParadoxFamily family = paradox_family(k, terms);
  return !guess(family.F0, k, {.d_max = 1, .b_max = deg_max, .margin = 16, .d_min = 1}).has_value();
}

std::vector<Poly> default_probe_list() {
  return {Poly{1}, Poly{1, 1}, Poly{1, -1}, Poly{1, 1, 1}, Poly{1, 0, 1}};
}

std::vector<ProbeResult> no_becker_multiple_probe(int k, const std::vector<Poly>& r_list, const SearchBounds& bounds,
                                                  long terms) {
  const ParadoxFamily family = paradox_family(k, terms);
  std::vector<ProbeResult> out;
  for (const auto& r : r_list) {
    if (r.is_zero()) throw InvalidInput("probe multiplier must be nonzero");
    out.push_back({r, becker_form_search(r * family.F, k, bounds)});
  }
  return out;
}

std::vector<std::string> corpus_names() {
  return {"binary_partitions", "normalization_example", "paradox_k2", "paradox_k3", "stern", "thue_morse"};
}

CorpusItem corpus_item(const std::string& name) {
  CorpusItem item;
  item.name = name;
  const Poly one = Poly::constant(1);
  const Poly z = Poly::z();
  if (name == "thue_morse") {
    item.equation = MahlerEquation(2, {one, z - one});
    item.prefix = prefix_oracle(Oracle::thue_morse, kCorpusPrefix);
  } else if (name == "stern") {
    item.equation = MahlerEquation(2, {one, -Poly{1, 1, 1}});
    item.prefix = prefix_oracle(Oracle::stern, kCorpusPrefix);
  } else if (name == "binary_partitions") {
    item.equation = MahlerEquation(2, {one - z, -one});
    item.prefix = prefix_oracle(Oracle::binary_partitions, kCorpusPrefix);
  } else if (name == "normalization_example") {
    item.equation = MahlerEquation(2, {one + z, -one});
    item.prefix = LaurentSeries::from_poly(one - z, kCorpusPrefix);
  } else if (name == "paradox_k2" || name == "paradox_k3") {
    const int k = name == "paradox_k2" ? 2 : 3;
    item.equation = paradox_induced_equation(k);
    item.prefix = paradox_family(k, kCorpusPrefix).F.truncate(kCorpusPrefix);
  } else {
    throw InvalidInput("unknown corpus item: " + name);
  }
  item.k = item.equation.k();
  const Certificate cert = certify(item.equation, item.prefix, 2);
  item.expected.verdict = cert.verdict;
  item.expected.criterion = cert.criterion;
  const ClosureResult closure = closure_rep(item.equation, item.prefix, {16, 16});
  if (closure.rep) item.expected.closure_dim = closure.rep->dim();
  item.expected.normalization = normalize(item.equation, item.prefix);
  return item;
}

}  // namespace mahler
