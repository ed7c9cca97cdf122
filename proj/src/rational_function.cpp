#include "mahler/rational_function.hpp"

#include <utility>

#include "mahler/errors.hpp"

namespace mahler {

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  Poly g = gcd(num, den);
  if (g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  const Rational scale = 1 / den.leading();
  num_ = num * scale;
  den_ = den * scale;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction substitute_power(const RationalFunction& f, std::size_t m) {
  return RationalFunction(substitute_power(f.num(), m), substitute_power(f.den(), m));
}

RationalFunction section(const RationalFunction& f, int k, int r) {
  if (f.is_polynomial()) return RationalFunction(section(f.num(), k, r) * (1 / f.den().leading()));
  const Poly norm = norm_over_kth_roots(f.den(), k);
  const Poly cofactor = exact_div(substitute_power(norm, static_cast<std::size_t>(k)), f.den());
  return RationalFunction(section(f.num() * cofactor, k, r), norm);
}

long cyclotomic_valuation(const RationalFunction& f, long n) {
  if (f.is_zero()) throw InvalidInput("valuation of the zero rational function");
  const Poly& phi = cyclotomic(n);
  return static_cast<long>(multiplicity(f.num(), phi)) - static_cast<long>(multiplicity(f.den(), phi));
}

long valuation_at_zero(const RationalFunction& f) {
  return static_cast<long>(f.num().valuation()) - static_cast<long>(f.den().valuation());
}

std::string to_string(const RationalFunction& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace mahler
