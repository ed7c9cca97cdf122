#include "mahler/series.hpp"

#include <algorithm>
#include <utility>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace

LaurentSeries::LaurentSeries(long start, std::vector<Rational> coeffs, long order) : order_(order) {
  std::size_t lead = 0;
  const long available = std::max(0L, order - start);
  const std::size_t keep = std::min(coeffs.size(), static_cast<std::size_t>(available));
  while (lead < keep && mahler::is_zero(coeffs[lead])) ++lead;
  if (lead == keep) {
    valuation_ = order;
    return;
  }
  valuation_ = start + static_cast<long>(lead);
  coeffs_.assign(std::make_move_iterator(coeffs.begin() + static_cast<long>(lead)),
                 std::make_move_iterator(coeffs.begin() + static_cast<long>(keep)));
  coeffs_.resize(static_cast<std::size_t>(order - valuation_));
}

LaurentSeries LaurentSeries::from_poly(const Poly& p, long order) { return LaurentSeries(0, p.coeffs(), order); }

LaurentSeries LaurentSeries::from_prefix(std::vector<Rational> coeffs) {
  const long n = static_cast<long>(coeffs.size());
  return LaurentSeries(0, std::move(coeffs), n);
}

Rational LaurentSeries::coeff(long n) const {
  if (n >= order_) throw InsufficientData("coefficient of z^" + std::to_string(n) + " is beyond the known order " + std::to_string(order_));
  if (n < valuation_) return 0;
  return coeffs_[static_cast<std::size_t>(n - valuation_)];
}

std::vector<Rational> LaurentSeries::prefix(long n) const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, n)));
  for (long i = 0; i < n; ++i) out.push_back(coeff(i));
  return out;
}

LaurentSeries LaurentSeries::truncate(long order) const {
  if (order > order_) throw InsufficientData("cannot extend a series beyond its known order");
  return LaurentSeries(valuation_, coeffs_, order);
}

LaurentSeries LaurentSeries::shift(long s) const {
  LaurentSeries r = *this;
  r.valuation_ += s;
  r.order_ += s;
  return r;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const long order = std::min(a.order_, b.order_);
  const long start = std::min(a.valuation_, b.valuation_);
  if (start >= order) return LaurentSeries::zero(order);
  std::vector<Rational> c(static_cast<std::size_t>(order - start));
  for (long n = start; n < order; ++n) {
    auto& slot = c[static_cast<std::size_t>(n - start)];
    if (n >= a.valuation_) slot += a.coeffs_[static_cast<std::size_t>(n - a.valuation_)];
    if (n >= b.valuation_) slot += b.coeffs_[static_cast<std::size_t>(n - b.valuation_)];
  }
  return LaurentSeries(start, std::move(c), order);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const long order = std::min(a.order_ + b.valuation_, b.order_ + a.valuation_);
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(order);
  const long start = a.valuation_ + b.valuation_;
  const long len = order - start;
  if (len <= 0) return LaurentSeries::zero(order);
  std::vector<Rational> c(static_cast<std::size_t>(len));
  const long na = std::min<long>(static_cast<long>(a.coeffs_.size()), len);
  for (long i = 0; i < na; ++i) {
    const Rational& x = a.coeffs_[static_cast<std::size_t>(i)];
    if (mahler::is_zero(x)) continue;
    const long nb = std::min<long>(static_cast<long>(b.coeffs_.size()), len - i);
    for (long j = 0; j < nb; ++j) {
      const Rational& y = b.coeffs_[static_cast<std::size_t>(j)];
      if (!mahler::is_zero(y)) c[static_cast<std::size_t>(i + j)] += x * y;
    }
  }
  return LaurentSeries(start, std::move(c), order);
}

LaurentSeries operator*(const LaurentSeries& a, const Rational& c) {
  if (mahler::is_zero(c)) return LaurentSeries::zero(a.order_);
  LaurentSeries r = a;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

LaurentSeries operator*(const Poly& p, const LaurentSeries& a) {
  if (p.is_zero()) return LaurentSeries::zero(a.order_);
  const long order = a.order_ + static_cast<long>(p.valuation());
  if (a.is_zero()) return LaurentSeries::zero(order);
  const long start = a.valuation_;
  const long len = order - start;
  std::vector<Rational> c(static_cast<std::size_t>(len));
  for (std::size_t i = 0; i < p.coeffs().size() && static_cast<long>(i) < len; ++i) {
    const Rational& x = p.coeffs()[i];
    if (mahler::is_zero(x)) continue;
    const long nb = std::min<long>(static_cast<long>(a.coeffs_.size()), len - static_cast<long>(i));
    for (long j = 0; j < nb; ++j) {
      const Rational& y = a.coeffs_[static_cast<std::size_t>(j)];
      if (!mahler::is_zero(y)) c[i + static_cast<std::size_t>(j)] += x * y;
    }
  }
  return LaurentSeries(start, std::move(c), order);
}

bool agree(const LaurentSeries& a, const LaurentSeries& b) { return (a - b).is_zero(); }

LaurentSeries invert(const LaurentSeries& a) {
  if (a.is_zero()) throw DivisionByZero("inverting a series that vanishes modulo z^" + std::to_string(a.order()));
  const long v = a.valuation();
  const long len = a.order() - v;
  const auto& u = a.coeffs();
  const Rational inv0 = 1 / u[0];
  std::vector<Rational> inv(static_cast<std::size_t>(len));
  inv[0] = inv0;
  for (long n = 1; n < len; ++n) {
    Rational acc = 0;
    for (long j = 1; j <= n; ++j) {
      const Rational& x = u[static_cast<std::size_t>(j)];
      if (!mahler::is_zero(x)) acc += x * inv[static_cast<std::size_t>(n - j)];
    }
    inv[static_cast<std::size_t>(n)] = -acc * inv0;
  }
  return LaurentSeries(-v, std::move(inv), a.order() - 2 * v);
}

LaurentSeries compose_power(const LaurentSeries& a, long m) {
  if (m < 1) throw InvalidInput("compose_power requires m >= 1");
  if (a.is_zero()) return LaurentSeries::zero(a.order() * m);
  std::vector<Rational> c(a.coeffs().size() * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i * static_cast<std::size_t>(m)] = a.coeffs()[i];
  return LaurentSeries(a.valuation() * m, std::move(c), a.order() * m);
}

LaurentSeries expand(const RationalFunction& f, long order) {
  if (f.is_zero()) return LaurentSeries::zero(order);
  const long vn = static_cast<long>(f.num().valuation());
  const long vd = static_cast<long>(f.den().valuation());
  const long start = vn - vd;
  if (start >= order) return LaurentSeries::zero(order);
  const long len = order - start;
  const auto& d = f.den().coeffs();
  const Rational inv0 = 1 / d[static_cast<std::size_t>(vd)];
  std::vector<Rational> inv(static_cast<std::size_t>(len));
  for (long n = 0; n < len; ++n) {
    Rational acc = n == 0 ? Rational(1) : Rational(0);
    for (long j = 1; j <= n && vd + j < static_cast<long>(d.size()); ++j) {
      const Rational& x = d[static_cast<std::size_t>(vd + j)];
      if (!mahler::is_zero(x)) acc -= x * inv[static_cast<std::size_t>(n - j)];
    }
    inv[static_cast<std::size_t>(n)] = acc * inv0;
  }
  const auto& p = f.num().coeffs();
  std::vector<Rational> c(static_cast<std::size_t>(len));
  for (long i = vn; i < static_cast<long>(p.size()) && i - vn < len; ++i) {
    const Rational& x = p[static_cast<std::size_t>(i)];
    if (mahler::is_zero(x)) continue;
    for (long j = 0; i - vn + j < len; ++j) c[static_cast<std::size_t>(i - vn + j)] += x * inv[static_cast<std::size_t>(j)];
  }
  return LaurentSeries(start, std::move(c), order);
}

LaurentSeries cartier(const LaurentSeries& f, int k, int i) {
  if (k < 2 || i < 0 || i >= k) throw InvalidInput("cartier requires k >= 2 and 0 <= i < k");
  const long order = ceil_div(f.order() - i, k);
  if (f.is_zero()) return LaurentSeries::zero(order);
  const long start = ceil_div(f.valuation() - i, k);
  std::vector<Rational> c;
  for (long n = start; n < order; ++n) c.push_back(f.coeff(k * n + i));
  return LaurentSeries(start, std::move(c), order);
}

LaurentSeries sections_recompose(const LaurentSeries& f, int k) {
  LaurentSeries total;
  for (int i = 0; i < k; ++i) {
    LaurentSeries term = compose_power(cartier(f, k, i), k).shift(i);
    total = i == 0 ? term : total + term;
  }
  return total;
}

LaurentSeries prefix_oracle(Oracle which, long order) {
  if (order < 1) throw InvalidInput("prefix_oracle requires order >= 1");
  const auto n = static_cast<std::size_t>(order);
  switch (which) {
    case Oracle::thue_morse:
    case Oracle::stern: {
      Poly product = Poly::constant(1);
      for (std::size_t p = 1; p < n; p *= 2) {
        Poly factor = which == Oracle::thue_morse ? Poly::constant(1) - Poly::monomial(1, p)
                                                  : Poly::constant(1) + Poly::monomial(1, p) + Poly::monomial(1, 2 * p);
        product = truncate(product * factor, n);
      }
      return LaurentSeries::from_poly(product, order);
    }
    case Oracle::binary_partitions: {
      std::vector<Integer> ways(n);
      ways[0] = 1;
      for (std::size_t p = 1; p < n; p *= 2)
        for (std::size_t s = p; s < n; ++s) ways[s] += ways[s - p];
      std::vector<Rational> c(ways.begin(), ways.end());
      return LaurentSeries(0, std::move(c), order);
    }
  }
  throw InvalidInput("unknown oracle");
}

std::string to_string(Oracle which) {
  switch (which) {
    case Oracle::thue_morse: return "thue_morse";
    case Oracle::stern: return "stern";
    case Oracle::binary_partitions: return "binary_partitions";
  }
  return "unknown";
}

}  // namespace mahler
