#pragma once

#include <string>
#include <vector>

#include "mahler/poly.hpp"
#include "mahler/rational_function.hpp"

namespace mahler {

/// Truncated Laurent series sum_{n >= v} c_n z^n known modulo z^order.
///
/// The stored valuation is the exponent of the first nonzero coefficient; a
/// series that vanishes modulo z^order has valuation == order and no stored
/// coefficients. Every operation returns the largest order it can guarantee.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  /// Coefficients of z^start, z^(start+1), ...; entries at or beyond `order`
  /// are dropped and missing ones below `order` are zero.
  LaurentSeries(long start, std::vector<Rational> coeffs, long order);

  static LaurentSeries zero(long order) { return LaurentSeries(order, {}, order); }
  static LaurentSeries from_poly(const Poly& p, long order);
  /// Power series c_0 + c_1 z + ... known exactly up to its length.
  static LaurentSeries from_prefix(std::vector<Rational> coeffs);

  long valuation() const { return valuation_; }
  long order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Stored coefficients, for exponents valuation() .. order()-1.
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of z^n; throws InsufficientData when n >= order().
  Rational coeff(long n) const;
  /// Coefficients of z^0 .. z^(n-1).
  std::vector<Rational> prefix(long n) const;

  LaurentSeries truncate(long order) const;
  /// Multiplies by z^s.
  LaurentSeries shift(long s) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const Rational& c);
  /// Exact polynomial factor: order grows by the valuation of p.
  friend LaurentSeries operator*(const Poly& p, const LaurentSeries& a);
  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

 private:
  long valuation_ = 0;
  long order_ = 0;
  std::vector<Rational> coeffs_;
};

/// True when a and b agree modulo z^min(order_a, order_b).
bool agree(const LaurentSeries& a, const LaurentSeries& b);

/// Inverse of a series with nonzero leading coefficient; order O - 2v.
LaurentSeries invert(const LaurentSeries& a);

/// F(z^m): valuation and order scale by m.
LaurentSeries compose_power(const LaurentSeries& a, long m);

/// Laurent expansion at 0 of a rational function modulo z^order.
LaurentSeries expand(const RationalFunction& f, long order);

/// Cartier operator: coefficient n of the result is coefficient kn+i of F.
LaurentSeries cartier(const LaurentSeries& f, int k, int i);

/// sum_i z^i * cartier(F, k, i)(z^k).
LaurentSeries sections_recompose(const LaurentSeries& f, int k);

enum class Oracle { thue_morse, stern, binary_partitions };

/// Brute-force prefixes: Thue-Morse and Stern by expanding their infinite
/// products, binary partitions by counting multisets of powers of two.
LaurentSeries prefix_oracle(Oracle which, long order);

std::string to_string(Oracle which);

}  // namespace mahler
