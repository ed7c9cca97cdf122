#include <algorithm>

#include "mahler/equation.hpp"
#include "mahler/errors.hpp"

namespace mahler {

namespace {

bool lex_less(const MahlerEquation& a, const MahlerEquation& b) {
  for (int i = 0; i <= std::min(a.degree(), b.degree()); ++i) {
    const auto& x = a.coeff(i).coeffs();
    const auto& y = b.coeff(i).coeffs();
    for (std::size_t j = 0; j < std::min(x.size(), y.size()); ++j)
      if (x[j] != y[j]) return x[j] < y[j];
    if (x.size() != y.size()) return x.size() < y.size();
  }
  return a.degree() < b.degree();
}

}  // namespace

std::optional<MahlerEquation> guess(const LaurentSeries& f, int k, const GuessOptions& options) {
  if (k < 2) throw InvalidInput("guess needs k >= 2");
  if (options.d_min < 1 || options.d_max < options.d_min || options.b_max < 0 || options.margin < 0) {
    throw InvalidInput("invalid guess bounds");
  }
  const long known = f.order() - std::min(0L, f.valuation());
  const long needed = static_cast<long>(options.d_max + 1) * (options.b_max + 1) + options.margin;
  if (known < needed) {
    throw InsufficientData("guess needs at least " + std::to_string(needed) + " known coefficients, got " +
                           std::to_string(known));
  }
  if (f.is_zero()) return std::nullopt;
  const long v = f.valuation();
  const long solve_end = f.order() - options.margin;

  for (int d = options.d_min; d <= options.d_max; ++d) {
    const long kd = checked_power(k, d);
    const long e_lo = std::min(v, kd * v);
    for (int b = 0; b <= options.b_max; ++b) {
      const auto width = static_cast<std::size_t>((d + 1) * (b + 1));
      const auto height = static_cast<std::size_t>(std::max(0L, solve_end - e_lo));
      Matrix<Rational> system(height, width);
      for (long e = e_lo; e < solve_end; ++e) {
        const auto row = static_cast<std::size_t>(e - e_lo);
        for (int i = 0; i <= d; ++i) {
          const long ki = checked_power(k, i);
          for (int j = 0; j <= b; ++j) {
            const long t = e - j;
            if (t % ki != 0 || t / ki < v) continue;
            system(row, static_cast<std::size_t>(i * (b + 1) + j)) = f.coeff(t / ki);
          }
        }
      }
      const auto kernel = nullspace(system);
      std::optional<MahlerEquation> best;
      for (const auto& vec : kernel) {
        std::vector<Poly> coeffs;
        for (int i = 0; i <= d; ++i) {
          coeffs.emplace_back(std::vector<Rational>(vec.begin() + i * (b + 1), vec.begin() + (i + 1) * (b + 1)));
        }
        if (coeffs.front().is_zero() || coeffs.back().is_zero()) continue;
        MahlerEquation candidate = normalize_content(MahlerEquation(k, std::move(coeffs)));
        if (!verify(candidate, f).holds()) continue;
        if (!best || lex_less(candidate, *best)) best = std::move(candidate);
      }
      if (best) return best;
    }
  }
  return std::nullopt;
}

}  // namespace mahler
