#pragma once

#include <string>

#include "mahler/poly.hpp"

namespace mahler {

/// num/den in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(Poly::constant(1)) {}
  RationalFunction(Poly num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Poly num, Poly den);
  RationalFunction(const Rational& c) : RationalFunction(Poly::constant(c)) {}  // NOLINT

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RationalFunction operator-() const;
  RationalFunction inverse() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

 private:
  Poly num_;
  Poly den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

/// f(z^m).
RationalFunction substitute_power(const RationalFunction& f, std::size_t m);

/// Cartier section of the Laurent expansion at 0 of f: the denominator is
/// made a polynomial in z^k with norm_over_kth_roots, then the numerator is
/// sectioned.
RationalFunction section(const RationalFunction& f, int k, int r);

/// Order of f at a primitive n-th root of unity: multiplicity of Phi_n in the
/// numerator minus its multiplicity in the denominator.
long cyclotomic_valuation(const RationalFunction& f, long n);

/// Order of f at 0 (negative for a pole).
long valuation_at_zero(const RationalFunction& f);

std::string to_string(const RationalFunction& f);

}  // namespace mahler
