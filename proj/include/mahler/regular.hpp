#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mahler/equation.hpp"
#include "mahler/matrix.hpp"
#include "mahler/series.hpp"

namespace mahler {

/// f(n) = row * A_{i_s} ... A_{i_0} * col where (n)_k = i_s ... i_0.
struct LinearRepresentation {
  int k = 2;
  std::vector<Rational> row;
  std::vector<Matrix<Rational>> matrices;
  std::vector<Rational> col;

  std::size_t dim() const { return row.size(); }
  /// Throws InvalidInput on inconsistent dimensions.
  void validate() const;
  friend bool operator==(const LinearRepresentation&, const LinearRepresentation&) = default;
};

Rational eval_rep(const LinearRepresentation& rep, unsigned long n);
LaurentSeries series_of_rep(const LinearRepresentation& rep, long order);

struct ClosureCaps {
  std::size_t max_dim = 32;
  int max_depth = 32;
};

struct ClosureResult {
  std::optional<LinearRepresentation> rep;
  /// Coordinates of the basis elements; the first one is F.
  std::vector<CoordinateVector> basis;
  /// Empty on success, otherwise which cap stopped the iteration.
  std::string reason;
};

/// Closes {F} under the Cartier operators at the level of coordinate vectors.
/// F must be a power series solving eq. Hitting a cap is inconclusive, not a
/// proof of non-regularity.
ClosureResult closure_rep(const MahlerEquation& eq, const LaurentSeries& f, const ClosureCaps& caps = {});

/// An equation satisfied by the generating series of rep, degree-minimized
/// where an exact certificate is available.
MahlerEquation rep_to_equation(const LinearRepresentation& rep);

}  // namespace mahler
