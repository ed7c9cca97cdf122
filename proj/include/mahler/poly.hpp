#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mahler/rational.hpp"

namespace mahler {

/// Univariate polynomial over Q, coefficients in ascending degree.
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t exponent);
  /// The polynomial z.
  static Poly z() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Multiplicity of the root 0. Throws InvalidInput on the zero polynomial.
  std::size_t valuation() const;

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of z^i, zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;
  /// Lowest nonzero coefficient.
  const Rational& trailing() const;

  Rational operator()(const Rational& x) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division; throws DivisionByZero when the divisor is zero.
DivRem divrem(const Poly& p, const Poly& q);
/// Quotient of a division known to be exact; throws InvariantViolation if the
/// remainder is nonzero.
Poly exact_div(const Poly& p, const Poly& q);
bool divides(const Poly& d, const Poly& p);

/// Monic gcd (positive leading coefficient); gcd(0, 0) = 0.
Poly gcd(const Poly& p, const Poly& q);
/// Monic gcd of a list of polynomials.
Poly content(std::span<const Poly> polys);
Poly monic(const Poly& p);
Poly pow(const Poly& p, unsigned exponent);
/// Multiplies by z^n.
Poly shift(const Poly& p, std::size_t n);
/// p mod z^n.
Poly truncate(const Poly& p, std::size_t n);

/// p(z^m).
Poly substitute_power(const Poly& p, std::size_t m);

/// Cartier section of a polynomial: sum_n p[k n + r] z^n.
Poly section(const Poly& p, int k, int r);

/// Determinant of a square polynomial matrix (rows of entries).
Poly determinant(std::vector<std::vector<Poly>> m);

/// The polynomial N with N(z^k) = prod_{w^k = 1} q(w z), computed as the
/// determinant of multiplication by q(u z) on Q[z][u]/(u^k - 1).
Poly norm_over_kth_roots(const Poly& q, int k);

/// Exponent of the largest power of `factor` dividing p (p nonzero, factor
/// non-constant).
unsigned multiplicity(const Poly& p, const Poly& factor);

/// Human-readable rendering, e.g. "1 - z + 2*z^3".
std::string to_string(const Poly& p, const std::string& var = "z");

// --- Cyclotomic machinery ---------------------------------------------------

long euler_phi(long n);
/// n-th cyclotomic polynomial (cached).
const Poly& cyclotomic(long n);

struct CyclotomicFactor {
  long order;
  unsigned multiplicity;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

/// p = unit * z^z_power * prod Phi_n^e * remainder, remainder monic without
/// zero or root-of-unity roots.
struct CyclotomicProfile {
  std::size_t z_power = 0;
  std::vector<CyclotomicFactor> cyclo;  // ascending order, distinct
  Poly remainder;
  Rational unit;
};

CyclotomicProfile cyclotomic_profile(const Poly& p);
Poly reconstruct(const CyclotomicProfile& profile);

struct UnityOrder {
  long order;
  unsigned multiplicity;
  /// For fixed-type orders: least M >= 1 with k^M = 1 (mod n).
  /// For orders in the set A: least M >= 1 with k^(2M) = k^M (mod n).
  long M;
  friend bool operator==(const UnityOrder&, const UnityOrder&) = default;
};

/// Root-of-unity zeros split by whether x -> x^k eventually returns to them.
struct UnityClassification {
  std::vector<UnityOrder> fixed_type;  // gcd(n, k) = 1
  std::vector<UnityOrder> set_A;       // gcd(n, k) > 1
};

UnityClassification classify_unity_zeros(const CyclotomicProfile& profile, int k);

/// Least M >= 1 with k^M = 1 (mod n); requires gcd(n, k) = 1.
long multiplicative_order(long k, long n);
/// Least M >= 1 with k^(2M) = k^M (mod n).
long preperiod_stabilizer(long k, long n);

}  // namespace mahler
