#include <algorithm>
#include <limits>
#include <sstream>

#include "mahler/equation.hpp"
#include "mahler/errors.hpp"

namespace mahler {

long checked_power(long k, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) {
    if (r > std::numeric_limits<long>::max() / k) throw InvalidInput("k^e overflows");
    r *= k;
  }
  return r;
}

MahlerEquation::MahlerEquation(int k, std::vector<Poly> coeffs) : k_(k), coeffs_(std::move(coeffs)) {
  if (k_ < 2) throw InvalidInput("Mahler equation needs k >= 2");
  if (coeffs_.size() < 2) throw InvalidInput("Mahler equation needs degree d >= 1");
  if (coeffs_.front().is_zero()) throw InvalidInput("Mahler equation needs a_0 != 0");
  if (coeffs_.back().is_zero()) throw InvalidInput("Mahler equation needs a_d != 0");
}

long MahlerEquation::power(int i) const { return checked_power(k_, i); }

MahlerEquation normalize_content(const MahlerEquation& eq) {
  const Poly g = content(eq.coeffs());
  std::vector<Poly> out;
  out.reserve(eq.coeffs().size());
  for (const auto& a : eq.coeffs()) out.push_back(g.degree() > 0 ? exact_div(a, g) : a);
  const Rational scale = 1 / out.front().trailing();
  for (auto& a : out) a *= scale;
  return MahlerEquation(eq.k(), std::move(out));
}

bool is_associate(const MahlerEquation& a, const MahlerEquation& b) {
  return a.k() == b.k() && a.degree() == b.degree() && normalize_content(a) == normalize_content(b);
}

std::string to_string(const MahlerEquation& eq) {
  std::ostringstream out;
  for (int i = 0; i <= eq.degree(); ++i) {
    if (eq.coeff(i).is_zero()) continue;
    if (out.tellp() > 0) out << " + ";
    out << "(" << to_string(eq.coeff(i)) << ")*F(z";
    if (i > 0) out << "^" << eq.power(i);
    out << ")";
  }
  out << " = 0";
  return out.str();
}

namespace {

long ceil_rational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

long val(const Poly& p) { return static_cast<long>(p.valuation()); }

}  // namespace

long valuation_bound(const MahlerEquation& eq) {
  const int d = eq.degree();
  const long kd = eq.power(d);
  const Rational first(val(eq.coeff(d)), kd);
  const Rational second(val(eq.coeff(d)) - val(eq.coeff(0)), kd - 1);
  Rational a = first, b = second;
  a.canonicalize();
  b.canonicalize();
  return ceil_rational(std::max(a, b));
}

std::vector<LaurentSeries> solve_series(const MahlerEquation& eq, long order) {
  const long nu = valuation_bound(eq);
  if (order <= -nu) throw InvalidInput("solve_series needs order > -nu = " + std::to_string(-nu));
  const long delta = val(eq.coeff(0));
  // Beyond exponent `stable`, equation e only determines f(e - delta) from
  // lower coefficients, so the window [-nu, work) captures every constraint.
  long stable = std::numeric_limits<long>::min();
  for (int i = 1; i <= eq.degree(); ++i) {
    if (eq.coeff(i).is_zero()) continue;
    const long ki = eq.power(i);
    const long num = ki * delta - val(eq.coeff(i));
    const long bound = (num >= 0 ? num / (ki - 1) : -((-num + ki - 2) / (ki - 1))) + 1;
    stable = std::max(stable, bound);
  }
  const long work = std::max(order, stable - delta + 1);
  long e_min = std::numeric_limits<long>::max();
  long e_max = std::numeric_limits<long>::max();
  for (int i = 0; i <= eq.degree(); ++i) {
    if (eq.coeff(i).is_zero()) continue;
    e_min = std::min(e_min, val(eq.coeff(i)) - eq.power(i) * nu);
    e_max = std::min(e_max, val(eq.coeff(i)) + eq.power(i) * work - 1);
  }
  const auto unknowns = static_cast<std::size_t>(work + nu);
  // Columns run from the highest exponent down so that pivots fall on the
  // coefficient each equation determines.
  auto column = [&](long n) { return static_cast<std::size_t>(work - 1 - n); };
  std::vector<std::vector<Rational>> rows;
  for (long e = e_min; e <= e_max; ++e) {
    std::vector<Rational> row(unknowns);
    bool any = false;
    for (int i = 0; i <= eq.degree(); ++i) {
      const long ki = eq.power(i);
      const auto& a = eq.coeff(i).coeffs();
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (is_zero(a[j])) continue;
        const long t = e - static_cast<long>(j);
        if (t % ki != 0) continue;
        const long n = t / ki;
        if (n < -nu) continue;
        row[column(n)] += a[j];
        any = true;
      }
    }
    if (any) rows.push_back(std::move(row));
  }
  Matrix<Rational> system(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];

  // Project the nullspace onto exponents [-nu, order) and re-echelonize.
  const auto width = static_cast<std::size_t>(order + nu);
  const auto kernel = nullspace(system);
  Matrix<Rational> projected(kernel.size(), width);
  for (std::size_t r = 0; r < kernel.size(); ++r)
    for (long n = -nu; n < order; ++n) projected(r, static_cast<std::size_t>(n + nu)) = kernel[r][column(n)];
  auto [reduced, pivots] = rref(std::move(projected));

  std::vector<LaurentSeries> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    LaurentSeries s(-nu, reduced.row(r), order);
    if (!verify(eq, s).holds()) throw InvariantViolation("solve_series produced a non-solution");
    basis.push_back(std::move(s));
  }
  return basis;
}

LaurentSeries apply(const MahlerEquation& eq, const LaurentSeries& f) {
  LaurentSeries total = eq.coeff(0) * f;
  for (int i = 1; i <= eq.degree(); ++i) total = total + eq.coeff(i) * compose_power(f, eq.power(i));
  return total;
}

Residual verify(const MahlerEquation& eq, const LaurentSeries& f) {
  const LaurentSeries r = apply(eq, f);
  return {r.is_zero() ? r.order() : r.valuation(), r.order()};
}

RFMatrix companion(const MahlerEquation& eq) {
  const auto d = static_cast<std::size_t>(eq.degree());
  RFMatrix a(d, d);
  for (std::size_t i = 1; i <= d; ++i) a(0, i - 1) = -RationalFunction(eq.coeffs()[i], eq.coeff(0));
  for (std::size_t i = 1; i < d; ++i) a(i, i - 1) = RationalFunction(Poly::constant(1));
  return a;
}

RFMatrix substitute_power(const RFMatrix& m, std::size_t power) {
  RFMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = substitute_power(m(i, j), power);
  return out;
}

std::vector<RFMatrix> b_products(const MahlerEquation& eq, int n_max) {
  if (n_max < 1) throw InvalidInput("b_product needs n >= 1");
  const RFMatrix a = companion(eq);
  std::vector<RFMatrix> out{a};
  for (int m = 1; m < n_max; ++m) {
    out.push_back(out.back() * substitute_power(a, static_cast<std::size_t>(eq.power(m))));
  }
  return out;
}

RFMatrix b_product(const MahlerEquation& eq, int n) { return b_products(eq, n).back(); }

std::vector<long> pole_profile(const MahlerEquation& eq, long order, int n_max) {
  const Poly& phi = cyclotomic(order);
  std::vector<long> out;
  for (const auto& b : b_products(eq, n_max)) {
    long worst = 0;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        worst = std::max(worst, static_cast<long>(multiplicity(b(i, j).den(), phi)));
    out.push_back(worst);
  }
  return out;
}

CoordinateVector unit_coordinates(const MahlerEquation& eq, int index) {
  CoordinateVector v(static_cast<std::size_t>(eq.degree()));
  v.at(static_cast<std::size_t>(index)) = RationalFunction(Poly::constant(1));
  return v;
}

CoordinateVector cartier_coordinates(const MahlerEquation& eq, const CoordinateVector& v, int r) {
  const auto d = static_cast<std::size_t>(eq.degree());
  if (v.size() != d) throw InvalidInput("coordinate vector length must equal the equation degree");
  if (r < 0 || r >= eq.k()) throw InvalidInput("Cartier index out of range");
  CoordinateVector out(d);
  for (std::size_t i = 1; i <= d; ++i) {
    // Coefficient of F(z^(k^i)) once F itself is eliminated via the equation.
    RationalFunction g = v[0].is_zero() ? RationalFunction() : -v[0] * RationalFunction(eq.coeffs()[i], eq.coeff(0));
    if (i < d) g += v[i];
    out[i - 1] = section(g, eq.k(), r);
  }
  return out;
}

LaurentSeries expand_coordinates(const MahlerEquation& eq, const CoordinateVector& v, const LaurentSeries& f,
                                 long order) {
  LaurentSeries total = LaurentSeries::zero(order);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const LaurentSeries fi = compose_power(f, eq.power(static_cast<int>(i)));
    const long needed = order - std::min(fi.valuation(), fi.order());
    total = total + expand(v[i], std::max(needed, valuation_at_zero(v[i]) + 1)) * fi;
  }
  if (total.order() < order) {
    throw InsufficientData("series prefix too short to expand coordinates to order " + std::to_string(order));
  }
  return total.truncate(order);
}

std::optional<MahlerEquation> relation_to_equation(int k, std::vector<Poly> relation) {
  auto trim = [&] {
    while (!relation.empty() && relation.back().is_zero()) relation.pop_back();
  };
  trim();
  if (relation.empty()) throw InvalidInput("relation has no nonzero coefficient");
  while (relation.front().is_zero()) {
    relation.erase(relation.begin());
    const Poly& lead = *std::find_if(relation.begin(), relation.end(), [](const Poly& p) { return !p.is_zero(); });
    int r = 0;
    while (section(lead, k, r).is_zero()) ++r;
    for (auto& p : relation) p = section(p, k, r);
    trim();
  }
  if (relation.size() < 2) return std::nullopt;
  return normalize_content(MahlerEquation(k, std::move(relation)));
}

namespace {

/// Clears denominators of a rational-function vector.
std::vector<Poly> clear_denominators(const std::vector<RationalFunction>& v) {
  Poly l = Poly::constant(1);
  for (const auto& x : v) l = exact_div(l * x.den(), gcd(l, x.den()));
  std::vector<Poly> out;
  for (const auto& x : v) out.push_back(exact_div(x.num() * l, x.den()));
  return out;
}

}  // namespace

MahlerEquation equation_for_power(const MahlerEquation& eq, int m) {
  if (m < 1) throw InvalidInput("equation_for_power needs m >= 1");
  if (m == 1) return normalize_content(eq);
  const int d = eq.degree();
  const long big_k = eq.power(m);
  if (big_k > std::numeric_limits<int>::max()) throw InvalidInput("k^m too large");
  std::vector<CoordinateVector> coords;
  for (int t = 0; t < d; ++t) coords.push_back(unit_coordinates(eq, t));
  for (int t = d; t <= d * m; ++t) {
    const auto s = static_cast<std::size_t>(eq.power(t - d));
    const RationalFunction lead(substitute_power(eq.coeff(d), s));
    CoordinateVector next(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const RationalFunction c = -RationalFunction(substitute_power(eq.coeff(i), s)) / lead;
      const auto& base = coords[static_cast<std::size_t>(t - d + i)];
      for (int j = 0; j < d; ++j) next[static_cast<std::size_t>(j)] += c * base[static_cast<std::size_t>(j)];
    }
    coords.push_back(std::move(next));
  }
  for (int s = 1; s <= d; ++s) {
    RFMatrix system(static_cast<std::size_t>(d), static_cast<std::size_t>(s + 1));
    for (int j = 0; j <= s; ++j)
      for (int i = 0; i < d; ++i)
        system(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
            coords[static_cast<std::size_t>(j * m)][static_cast<std::size_t>(i)];
    auto kernel = nullspace(system);
    if (kernel.empty()) continue;
    auto result = relation_to_equation(static_cast<int>(big_k), clear_denominators(kernel.front()));
    if (!result) throw InvariantViolation("power equation collapsed to F = 0");
    return *result;
  }
  throw InvariantViolation("no dependency among d + 1 coordinate vectors");
}

}  // namespace mahler
