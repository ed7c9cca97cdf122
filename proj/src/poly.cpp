#include "mahler/poly.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <utility>

#include "mahler/errors.hpp"

namespace mahler {

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^-?[0-9]+(/[0-9]+)?$)");
  const std::string s(text);
  if (!std::regex_match(s, pattern)) {
    throw InvalidInput("not a rational number: \"" + s + "\"");
  }
  const auto slash = s.find('/');
  Integer num(s.substr(0, slash));
  Integer den(1);
  if (slash != std::string::npos) den = Integer(s.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in \"" + s + "\"");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t exponent) {
  std::vector<Rational> v(exponent + 1);
  v[exponent] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && mahler::is_zero(coeffs_.back())) coeffs_.pop_back();
}

std::size_t Poly::valuation() const {
  if (is_zero()) throw InvalidInput("valuation of the zero polynomial");
  std::size_t i = 0;
  while (mahler::is_zero(coeffs_[i])) ++i;
  return i;
}

Rational Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& Poly::leading() const {
  if (is_zero()) throw InvalidInput("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

const Rational& Poly::trailing() const { return coeffs_[valuation()]; }

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (mahler::is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (!mahler::is_zero(b.coeffs_[j])) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& c) {
  if (mahler::is_zero(c)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

DivRem divrem(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (p.degree() < q.degree()) return {Poly{}, p};
  std::vector<Rational> rem = p.coeffs();
  const auto& qc = q.coeffs();
  const std::size_t dq = qc.size() - 1;
  const Rational inv_lead = 1 / q.leading();
  std::vector<Rational> quot(rem.size() - dq);
  for (std::size_t i = quot.size(); i-- > 0;) {
    Rational c = rem[i + dq] * inv_lead;
    if (mahler::is_zero(c)) continue;
    for (std::size_t j = 0; j <= dq; ++j) {
      if (!mahler::is_zero(qc[j])) rem[i + j] -= c * qc[j];
    }
    quot[i] = std::move(c);
  }
  rem.resize(dq);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly exact_div(const Poly& p, const Poly& q) {
  auto [quot, rem] = divrem(p, q);
  if (!rem.is_zero()) {
    throw InvariantViolation("inexact division: (" + to_string(p) + ") / (" + to_string(q) + ")");
  }
  return quot;
}

bool divides(const Poly& d, const Poly& p) { return divrem(p, d).remainder.is_zero(); }

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * (1 / p.leading());
}

Poly gcd(const Poly& p, const Poly& q) {
  Poly a = monic(p);
  Poly b = monic(q);
  while (!b.is_zero()) {
    Poly r = monic(divrem(a, b).remainder);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly content(std::span<const Poly> polys) {
  Poly g;
  for (const auto& p : polys) {
    g = gcd(g, p);
    if (g.degree() == 0) break;
  }
  return g;
}

Poly pow(const Poly& p, unsigned exponent) {
  Poly result = Poly::constant(1);
  Poly base = p;
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

Poly shift(const Poly& p, std::size_t n) {
  if (p.is_zero() || n == 0) return p;
  std::vector<Rational> v(n);
  v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
  return Poly(std::move(v));
}

Poly truncate(const Poly& p, std::size_t n) {
  if (static_cast<long>(n) > p.degree()) return p;
  return Poly(std::vector<Rational>(p.coeffs().begin(), p.coeffs().begin() + n));
}

Poly substitute_power(const Poly& p, std::size_t m) {
  if (m == 0) throw InvalidInput("substitute_power requires m >= 1");
  if (m == 1 || p.is_zero()) return p;
  std::vector<Rational> v(static_cast<std::size_t>(p.degree()) * m + 1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i * m] = p.coeffs()[i];
  return Poly(std::move(v));
}

Poly section(const Poly& p, int k, int r) {
  if (k < 2 || r < 0 || r >= k) throw InvalidInput("section requires k >= 2 and 0 <= r < k");
  std::vector<Rational> v;
  for (std::size_t i = static_cast<std::size_t>(r); i < p.coeffs().size(); i += static_cast<std::size_t>(k)) {
    v.push_back(p.coeffs()[i]);
  }
  return Poly(std::move(v));
}

Poly determinant(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(1);
  // Fraction-free (Bareiss) elimination.
  bool negate = false;
  Poly previous = Poly::constant(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return Poly{};
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      negate = !negate;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      for (std::size_t j = c + 1; j < n; ++j) {
        m[r][j] = exact_div(m[c][c] * m[r][j] - m[r][c] * m[c][j], previous);
      }
      m[r][c] = Poly{};
    }
    previous = m[c][c];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Poly norm_over_kth_roots(const Poly& q, int k) {
  if (q.is_zero()) throw InvalidInput("norm of the zero polynomial");
  if (k < 1) throw InvalidInput("norm requires k >= 1");
  const auto uk = static_cast<std::size_t>(k);
  // Circulant matrix of multiplication by q(u z) in the basis 1, u, ..., u^(k-1).
  std::vector<Poly> residue(uk);
  for (std::size_t j = 0; j < q.coeffs().size(); ++j) {
    residue[j % uk] += Poly::monomial(q.coeffs()[j], j);
  }
  std::vector<std::vector<Poly>> m(uk, std::vector<Poly>(uk));
  for (std::size_t r = 0; r < uk; ++r) {
    for (std::size_t i = 0; i < uk; ++i) m[r][i] = residue[(r + uk - i) % uk];
  }
  const Poly det = determinant(std::move(m));
  if (det.is_zero()) throw InvariantViolation("singular multiplication matrix in norm computation");
  std::vector<Rational> out;
  for (std::size_t j = 0; j < det.coeffs().size(); ++j) {
    if (j % uk == 0) {
      out.push_back(det.coeffs()[j]);
    } else if (!mahler::is_zero(det.coeffs()[j])) {
      throw InvariantViolation("norm over k-th roots is not a polynomial in z^k");
    }
  }
  return Poly(std::move(out));
}

unsigned multiplicity(const Poly& p, const Poly& factor) {
  if (p.is_zero()) throw InvalidInput("multiplicity in the zero polynomial");
  if (factor.degree() < 1) throw InvalidInput("multiplicity of a constant factor");
  unsigned e = 0;
  Poly cur = p;
  while (cur.degree() >= factor.degree()) {
    auto [quot, rem] = divrem(cur, factor);
    if (!rem.is_zero()) break;
    cur = std::move(quot);
    ++e;
  }
  return e;
}

std::string to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const Rational& c = p.coeffs()[i];
    if (mahler::is_zero(c)) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (i == 0) {
      out << to_string(mag);
      continue;
    }
    if (!unit) out << to_string(mag) << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

}  // namespace mahler
