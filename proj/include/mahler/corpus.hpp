#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mahler/becker.hpp"
#include "mahler/equation.hpp"
#include "mahler/series.hpp"

namespace mahler {

struct ParadoxFamily {
  int k = 2;
  /// [[1 - z + z^(k-1), -z^(k^2-k)(1 - z)], [1, 0]].
  std::array<std::array<Poly, 2>, 2> M;
  /// Top-left entry of M(z) M(z^k) ... M(z^(k^(J-1))), known modulo z^order.
  LaurentSeries H;
  /// H + 1/z.
  LaurentSeries F0;
  /// 1 + z H.
  LaurentSeries F;
};

ParadoxFamily paradox_family(int k, long order);

/// A(z) - (1 - z + z^(k-1)) A(z^k) + z^(k^2-k) (1 - z) A(z^(k^2)) = 0.
MahlerEquation paradox_equation(int k);

/// The same equation rewritten for F = z F0.
MahlerEquation paradox_induced_equation(int k);

/// True when no relation p_0 F0 + p_1 F0(z^k) = 0 with deg p_i <= deg_max fits
/// a prefix of the given length. Heuristic corroboration only.
bool independence_check(int k, int deg_max = 12, long terms = 256);

struct ProbeResult {
  Poly R;
  std::optional<MahlerEquation> found;
};

/// {1, 1 + z, 1 - z, 1 + z + z^2, 1 + z^2}.
std::vector<Poly> default_probe_list();

/// Runs becker_form_search on R * F for each R; a hit would contradict the
/// absence of power-series Becker multiples, a miss is only a spot check.
std::vector<ProbeResult> no_becker_multiple_probe(int k, const std::vector<Poly>& r_list,
                                                  const SearchBounds& bounds = {3, 10, 16}, long terms = 256);

struct Expectations {
  Verdict verdict = Verdict::inconclusive;
  std::string criterion;
  /// Dimension of the Cartier closure, absent when the caps were hit.
  std::optional<std::size_t> closure_dim;
  BeckerNormalization normalization;
};

struct CorpusItem {
  std::string name;
  int k = 2;
  MahlerEquation equation{2, {Poly::constant(1), Poly::constant(-1)}};
  LaurentSeries prefix;
  Expectations expected;
};

/// Prefix length stored in corpus files.
inline constexpr long kCorpusPrefix = 64;

std::vector<std::string> corpus_names();

/// Rebuilds an item from the brute-force oracles and the library's own
/// algorithms; throws InvalidInput for an unknown name.
CorpusItem corpus_item(const std::string& name);

}  // namespace mahler
