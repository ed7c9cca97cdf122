#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mahler/matrix.hpp"
#include "mahler/poly.hpp"
#include "mahler/rational_function.hpp"
#include "mahler/series.hpp"

namespace mahler {

/// a_0(z) F(z) + a_1(z) F(z^k) + ... + a_d(z) F(z^(k^d)) = 0.
class MahlerEquation {
 public:
  /// Throws InvalidInput unless k >= 2, d >= 1, a_0 != 0 and a_d != 0.
  MahlerEquation(int k, std::vector<Poly> coeffs);

  int k() const { return k_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  const Poly& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  /// k^i as a checked integer.
  long power(int i) const;

  friend bool operator==(const MahlerEquation&, const MahlerEquation&) = default;

 private:
  int k_;
  std::vector<Poly> coeffs_;
};

/// k^e with overflow checking.
long checked_power(long k, long e);

/// Divides out the gcd of the coefficients and scales so that the lowest
/// nonzero coefficient of a_0 is 1.
MahlerEquation normalize_content(const MahlerEquation& eq);

/// Same k and proportional coefficient lists.
bool is_associate(const MahlerEquation& a, const MahlerEquation& b);

std::string to_string(const MahlerEquation& eq);

/// Every Laurent solution lies in z^(-nu) Q[[z]] with
/// nu = ceil(max(v0(a_d) / k^d, (v0(a_d) - v0(a_0)) / (k^d - 1))).
long valuation_bound(const MahlerEquation& eq);

/// Basis of the Laurent solutions modulo z^order, in reduced echelon form
/// with respect to ascending exponents. Empty when only F = 0 solves.
std::vector<LaurentSeries> solve_series(const MahlerEquation& eq, long order);

struct Residual {
  /// Exponent of the first nonzero residual coefficient, or propagated_order
  /// when the residual vanishes as far as it is known.
  long residual_order;
  /// Order up to which the residual is determined by F's truncation.
  long propagated_order;
  bool holds() const { return residual_order >= propagated_order; }
};

/// sum_i a_i(z) F(z^(k^i)) with soundly propagated order.
LaurentSeries apply(const MahlerEquation& eq, const LaurentSeries& f);
Residual verify(const MahlerEquation& eq, const LaurentSeries& f);

// --- Companion matrices -----------------------------------------------------

using RFMatrix = Matrix<RationalFunction>;

/// First row -a_i/a_0 (i = 1..d), identity block below.
RFMatrix companion(const MahlerEquation& eq);
RFMatrix substitute_power(const RFMatrix& m, std::size_t power);
/// B_n(z) = A(z) A(z^k) ... A(z^(k^(n-1))).
RFMatrix b_product(const MahlerEquation& eq, int n);
/// B_1 .. B_{n_max} in one pass.
std::vector<RFMatrix> b_products(const MahlerEquation& eq, int n_max);

/// For n = 1..n_max, the largest multiplicity of Phi_order in the
/// denominators of the entries of B_n.
std::vector<long> pole_profile(const MahlerEquation& eq, long order, int n_max);

// --- Coordinates over the basis F(z), F(z^k), ..., F(z^(k^(d-1))) ------------

using CoordinateVector = std::vector<RationalFunction>;

CoordinateVector unit_coordinates(const MahlerEquation& eq, int index = 0);

/// Coordinates of the r-th Cartier section of sum_i h_i F(z^(k^(i-1))).
CoordinateVector cartier_coordinates(const MahlerEquation& eq, const CoordinateVector& v, int r);

/// Series of sum_i h_i F(z^(k^(i-1))) modulo z^order, given F.
LaurentSeries expand_coordinates(const MahlerEquation& eq, const CoordinateVector& v, const LaurentSeries& f,
                                 long order);

/// An equation in base k^m satisfied by every solution of eq, obtained by
/// eliminating F(z^(k^j)) over the coordinate basis; content-normalized.
MahlerEquation equation_for_power(const MahlerEquation& eq, int m);

/// Turns a polynomial relation sum_{i} p_i F(z^(k^i)) = 0 (p polynomials,
/// some nonzero) into an equation with a_0 != 0 by applying Cartier sections
/// while p_0 = 0. Returns nullopt when the relation forces F = 0.
std::optional<MahlerEquation> relation_to_equation(int k, std::vector<Poly> relation);

// --- Guessing -----------------------------------------------------------------

struct GuessOptions {
  int d_max = 2;
  int b_max = 4;
  /// Trailing coefficients held back from solving and used only to verify.
  int margin = 16;
  int d_min = 1;
};

/// Smallest equation (degree d first, then coefficient degree bound, then
/// lexicographic coefficient vector) fitting the known prefix of F and
/// passing the verification margin.
std::optional<MahlerEquation> guess(const LaurentSeries& f, int k, const GuessOptions& options);

}  // namespace mahler
