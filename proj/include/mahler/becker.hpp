#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mahler/equation.hpp"
#include "mahler/regular.hpp"
#include "mahler/series.hpp"

namespace mahler {

/// Data turning F into G = F / (z^gamma Q) whose equation has q_0(0) != 0 and
/// no root-of-unity zero of order sharing a factor with k.
struct BeckerNormalization {
  int k = 2;
  /// Root-of-unity orders n of a_0 with gcd(n, k) > 1, with multiplicity and
  /// the least M such that k^(2M) = k^M (mod n).
  std::vector<UnityOrder> set_A;
  /// Orders coprime to k among the zeros of a_0; nonempty means a solution
  /// cannot be regular when the equation is minimal with trivial content.
  std::vector<UnityOrder> fixed_type;
  long N = 1;
  long gamma = 0;
  Rational c = 1;
  Poly Q, P, h, a;
  MahlerEquation new_eq{2, {Poly::constant(1), Poly::constant(-1)}};
  /// Check of G against new_eq when a solution prefix was supplied.
  std::optional<Residual> g_check;
};

/// Norm from Q(zeta_n) to Q of prod_{j<count} (1 - z^(k^j) x^exponent), where x is
/// a primitive n-th root of unity.
Poly orbit_norm(long n, long exponent, int k, long count);

BeckerNormalization normalize(const MahlerEquation& eq, const std::optional<LaurentSeries>& f = std::nullopt);

/// F / (z^gamma Q).
LaurentSeries normalized_series(const BeckerNormalization& norm, const LaurentSeries& f);

struct SearchBounds {
  int depth_max = 4;
  int deg_max = 12;
  int margin = 16;
};

/// An equation G + sum_{i>=1} a_i G(z^(k^i)) = 0 (so a_0 = 1) fitting and
/// verified on the whole prefix, searching depth first, then degree.
std::optional<MahlerEquation> becker_form_search(const LaurentSeries& g, int k, const SearchBounds& bounds = {});

/// A Becker equation for F / (z^shift Q).
struct ShiftedBeckerForm {
  long shift = 0;
  MahlerEquation equation;
};

/// becker_form_search on F / (z^gamma Q). With minimize_shift, failures are
/// retried on F / (z^g Q) for g = gamma - 1 down to 0 and the first hit wins.
std::optional<ShiftedBeckerForm> becker_form_for(const BeckerNormalization& norm, const LaurentSeries& f,
                                                 const SearchBounds& bounds = {}, bool minimize_shift = false);

/// norm with gamma replaced by shift.
BeckerNormalization with_shift(BeckerNormalization norm, long shift);

enum class Verdict { regular, not_regular, inconclusive };
std::string to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  /// "unity_zeros" when every zero of a_0 is 0 or a root of unity of order
  /// sharing a factor with k, "unbounded_poles" for the fixed-zero obstruction;
  /// empty when nothing fired.
  std::string criterion;
  /// Cyclotomic order of the zero that fired the obstruction.
  std::optional<long> order;
  std::optional<long> M;
  std::optional<MahlerEquation> equation;
  /// "unconditional" or "minimal up to search bounds" for obstructions.
  std::string minimality;
  std::string reason;
};

/// REGULAR when every zero of a_0 is 0 or a root of unity of order not
/// coprime to k.
Certificate certify_regular(const MahlerEquation& eq);

/// Looks for a nonzero fixed point xi = xi^(k^M) among the zeros of a_0 in a
/// content-free, minimal k^M-equation of F, M = 1..m_max.
Certificate certify_irregular(const MahlerEquation& eq, const LaurentSeries& f, int m_max = 3);

/// certify_regular, then certify_irregular when the first is inconclusive.
Certificate certify(const MahlerEquation& eq, const LaurentSeries& f, int m_max = 3);

/// Equation for F obtained from an a_0 = 1 equation for G = F / (z^gamma Q)
/// by clearing denominators; content-normalized.
MahlerEquation witness_equation(const BeckerNormalization& norm, const MahlerEquation& becker_eq);

struct Decomposition {
  LaurentSeries J;
  Poly Gamma;
  Rational rho;
  long delta = 0;
  /// Number of factors Gamma(z^(k^j)) used in the truncated product.
  int factors = 0;
};

/// a_0 = rho z^delta Gamma with Gamma(0) = 1, J = F prod_j Gamma(z^(k^j)).
Decomposition structure_decompose(const MahlerEquation& eq, const LaurentSeries& f);

/// Q(z) R(z) - Q(z^k) R(z^k) = 0, content-normalized; solved by R = 1/Q.
MahlerEquation reciprocal_equation(const Poly& q, int k);

/// Cartier-closure representation of 1/Q. Throws InvalidInput unless Q(0) = 1
/// and the reciprocal equation is certified regular.
ClosureResult reciprocal_rep(const Poly& q, int k, const ClosureCaps& caps = {});

}  // namespace mahler
