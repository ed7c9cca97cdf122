#include "mahler/regular.hpp"

#include <algorithm>

#include "mahler/errors.hpp"

namespace mahler {

void LinearRepresentation::validate() const {
  if (k < 2) throw InvalidInput("representation needs k >= 2");
  const std::size_t d = row.size();
  if (d == 0) throw InvalidInput("representation needs dimension >= 1");
  if (col.size() != d) throw InvalidInput("representation column has the wrong length");
  if (matrices.size() != static_cast<std::size_t>(k)) throw InvalidInput("representation needs exactly k matrices");
  for (const auto& m : matrices)
    if (m.rows() != d || m.cols() != d) throw InvalidInput("representation matrix has the wrong shape");
}

Rational eval_rep(const LinearRepresentation& rep, unsigned long n) {
  rep.validate();
  std::vector<Rational> w = rep.col;
  const auto k = static_cast<unsigned long>(rep.k);
  for (; n > 0; n /= k) w = rep.matrices[n % k] * w;
  Rational total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) total += rep.row[i] * w[i];
  return total;
}

LaurentSeries series_of_rep(const LinearRepresentation& rep, long order) {
  if (order < 1) throw InvalidInput("series_of_rep needs order >= 1");
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(order));
  for (long n = 0; n < order; ++n) c.push_back(eval_rep(rep, static_cast<unsigned long>(n)));
  return LaurentSeries(0, std::move(c), order);
}

namespace {

/// Rows of rational coordinates obtained by clearing a common denominator and
/// listing polynomial coefficients; Q-linear relations are preserved.
std::vector<std::vector<Rational>> flatten(const std::vector<CoordinateVector>& vs) {
  Poly l = Poly::constant(1);
  for (const auto& v : vs)
    for (const auto& x : v) l = exact_div(l * x.den(), gcd(l, x.den()));
  const std::size_t d = vs.front().size();
  std::vector<std::vector<Poly>> polys;
  std::vector<long> width(d, 0);
  for (const auto& v : vs) {
    std::vector<Poly> p;
    for (std::size_t i = 0; i < d; ++i) {
      p.push_back(exact_div(v[i].num() * l, v[i].den()));
      width[i] = std::max(width[i], p.back().degree() + 1);
    }
    polys.push_back(std::move(p));
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& p : polys) {
    std::vector<Rational> flat;
    for (std::size_t i = 0; i < d; ++i)
      for (long j = 0; j < width[i]; ++j) flat.push_back(p[i].coeff(static_cast<std::size_t>(j)));
    out.push_back(std::move(flat));
  }
  return out;
}

/// Coefficients expressing target in the basis, or nullopt.
std::optional<std::vector<Rational>> express(const std::vector<CoordinateVector>& basis, const CoordinateVector& target) {
  std::vector<CoordinateVector> all = basis;
  all.push_back(target);
  const auto flat = flatten(all);
  const std::size_t width = flat.front().size();
  Matrix<Rational> a(width, basis.size());
  std::vector<Rational> b(width);
  for (std::size_t r = 0; r < width; ++r) {
    for (std::size_t j = 0; j < basis.size(); ++j) a(r, j) = flat[j][r];
    b[r] = flat.back()[r];
  }
  return solve(a, b);
}

}  // namespace

ClosureResult closure_rep(const MahlerEquation& eq, const LaurentSeries& f, const ClosureCaps& caps) {
  if (!f.is_zero() && f.valuation() < 0) throw InvalidInput("closure_rep needs a power series");
  if (!verify(eq, f).holds()) throw InvalidInput("closure_rep: series does not solve the equation");
  const int k = eq.k();
  ClosureResult result;
  result.basis.push_back(unit_coordinates(eq, 0));
  std::vector<int> depth{0};
  // action[r][j] = coordinates of Lambda_r(basis[j]) in the basis.
  std::vector<std::vector<std::vector<Rational>>> action(static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < result.basis.size(); ++j) {
    for (int r = 0; r < k; ++r) {
      CoordinateVector image = cartier_coordinates(eq, result.basis[j], r);
      auto x = express(result.basis, image);
      if (!x) {
        if (result.basis.size() >= caps.max_dim) {
          result.reason = "dimension cap " + std::to_string(caps.max_dim) + " reached";
          return result;
        }
        if (depth[j] + 1 > caps.max_depth) {
          result.reason = "depth cap " + std::to_string(caps.max_depth) + " reached";
          return result;
        }
        result.basis.push_back(std::move(image));
        depth.push_back(depth[j] + 1);
        x = std::vector<Rational>(result.basis.size());
        x->back() = 1;
      }
      action[static_cast<std::size_t>(r)].push_back(std::move(*x));
    }
  }
  const std::size_t dim = result.basis.size();
  LinearRepresentation rep;
  rep.k = k;
  rep.col.assign(dim, 0);
  rep.col[0] = 1;
  for (const auto& v : result.basis) rep.row.push_back(expand_coordinates(eq, v, f, 1).coeff(0));
  for (int r = 0; r < k; ++r) {
    Matrix<Rational> m(dim, dim);
    const auto& cols = action[static_cast<std::size_t>(r)];
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t l = 0; l < cols[j].size(); ++l) m(l, j) = cols[j][l];
    rep.matrices.push_back(std::move(m));
  }
  const long check = std::min(64L, f.order());
  if (check > 0 && !agree(series_of_rep(rep, check), f.truncate(check))) {
    throw InvariantViolation("closure representation disagrees with the series");
  }
  result.rep = std::move(rep);
  return result;
}

namespace {

/// Exact test that sum_i a_i F(z^(k^i)) vanishes for the series of rep: the
/// Cartier closure of the residual lies in a space of dimension m, so it is
/// zero once its first k^(m-1) coefficients are.
bool certify_by_valuation(const LinearRepresentation& rep, std::size_t state_dim, const MahlerEquation& eq) {
  long b = 1;
  for (const auto& a : eq.coeffs()) b = std::max(b, a.degree());
  const long m = static_cast<long>(state_dim) * (eq.degree() + 1) * (b + 1);
  long length = 1;
  for (long i = 0; i + 1 < m; ++i) {
    length *= rep.k;
    if (length > 65536) return false;
  }
  const LaurentSeries f = series_of_rep(rep, length);
  return apply(eq, f).truncate(length).is_zero();
}

}  // namespace

MahlerEquation rep_to_equation(const LinearRepresentation& rep) {
  rep.validate();
  const int k = rep.k;
  const std::size_t d = rep.dim();
  // Row-vector generating series R(z) = sum_n row*A_(n) z^n satisfies
  // R(z) = R(z^k) M(z) + (row - row*A_0) with M(z) = sum_r A_r z^r.
  std::vector<Rational> defect = rep.row;
  const auto row_a0 = rep.row * rep.matrices[0];
  bool augmented = false;
  for (std::size_t i = 0; i < d; ++i) {
    defect[i] -= row_a0[i];
    if (!is_zero(defect[i])) augmented = true;
  }
  const std::size_t n = d + (augmented ? 1 : 0);
  RFMatrix mt(n, n);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      std::vector<Rational> c(static_cast<std::size_t>(k));
      for (int r = 0; r < k; ++r) c[static_cast<std::size_t>(r)] = rep.matrices[static_cast<std::size_t>(r)](b, a);
      mt(a, b) = RationalFunction(Poly(std::move(c)));
    }
    if (augmented) mt(a, d) = RationalFunction(defect[a]);
  }
  if (augmented) mt(d, d) = RationalFunction(Rational(1));
  std::vector<RationalFunction> c_vec(n);
  for (std::size_t i = 0; i < d; ++i) c_vec[i] = RationalFunction(rep.col[i]);

  std::optional<MahlerEquation> found;
  bool zero_series = false;
  for (std::size_t s = 1; s <= n && !found && !zero_series; ++s) {
    // u_i = c^T MT(z^(k^i)) ... MT(z^(k^(s-1))), so F(z^(k^i)) = u_i h(z^(k^s)).
    std::vector<std::vector<RationalFunction>> u(s + 1);
    u[s] = c_vec;
    RFMatrix tail = RFMatrix::identity(n);
    for (std::size_t i = s; i-- > 0;) {
      tail = substitute_power(mt, static_cast<std::size_t>(checked_power(k, static_cast<long>(i)))) * tail;
      u[i] = c_vec * tail;
    }
    RFMatrix system(n, s + 1);
    for (std::size_t i = 0; i <= s; ++i)
      for (std::size_t j = 0; j < n; ++j) system(j, i) = u[i][j];
    const auto kernel = nullspace(system);
    if (kernel.empty()) continue;
    Poly l = Poly::constant(1);
    for (const auto& x : kernel.front()) l = exact_div(l * x.den(), gcd(l, x.den()));
    std::vector<Poly> relation;
    for (const auto& x : kernel.front()) relation.push_back(exact_div(x.num() * l, x.den()));
    found = relation_to_equation(k, std::move(relation));
    if (!found) zero_series = true;
  }
  if (zero_series) return MahlerEquation(k, {Poly::constant(1), Poly::constant(-1)});
  if (!found) throw InvariantViolation("no relation among d + 1 coordinate rows");

  MahlerEquation result = *found;
  if (result.degree() > 1) {
    const LaurentSeries f = series_of_rep(rep, 256);
    for (int lower = 1; lower < result.degree(); ++lower) {
      const auto candidate = guess(f, k, {.d_max = lower, .b_max = 8, .margin = 16, .d_min = lower});
      if (candidate && certify_by_valuation(rep, n, *candidate)) {
        result = *candidate;
        break;
      }
    }
  }
  if (!verify(result, series_of_rep(rep, 64)).holds()) {
    throw InvariantViolation("equation from representation fails on the series");
  }
  return result;
}

}  // namespace mahler
