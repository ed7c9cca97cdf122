#include "mahler/becker.hpp"

#include <algorithm>
#include <numeric>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

/// Elements of Q[z][x] / Phi_n(x) as coefficient lists in x.
class CyclotomicRing {
 public:
  explicit CyclotomicRing(long n) : phi_(cyclotomic(n)), dim_(static_cast<std::size_t>(phi_.degree())) {}

  std::size_t dim() const { return dim_; }

  std::vector<Poly> reduce(std::vector<Poly> v) const {
    for (std::size_t t = v.size(); t-- > dim_;) {
      if (v[t].is_zero()) continue;
      const Poly c = v[t];
      for (std::size_t i = 0; i < dim_; ++i) v[t - dim_ + i] -= c * phi_.coeff(i);
      v[t] = Poly{};
    }
    v.resize(dim_);
    return v;
  }

  std::vector<Poly> power_of_x(std::size_t e) const {
    std::vector<Poly> v(e + 1);
    v[e] = Poly::constant(1);
    return reduce(std::move(v));
  }

  std::vector<Poly> mul(const std::vector<Poly>& a, const std::vector<Poly>& b) const {
    std::vector<Poly> out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return reduce(std::move(out));
  }

  /// Determinant of multiplication by a on the basis 1, x, ..., x^(dim-1).
  Poly norm(const std::vector<Poly>& a) const {
    std::vector<std::vector<Poly>> m(dim_, std::vector<Poly>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      const auto column = mul(a, power_of_x(i));
      for (std::size_t r = 0; r < dim_; ++r) m[r][i] = column[r];
    }
    return determinant(std::move(m));
  }

 private:
  Poly phi_;
  std::size_t dim_;
};

long power_mod(long k, long e, long n) {
  long result = 1 % n;
  long base = k % n;
  for (; e > 0; e >>= 1) {
    if (e & 1) result = static_cast<long>(static_cast<__int128>(result) * base % n);
    base = static_cast<long>(static_cast<__int128>(base) * base % n);
  }
  return result;
}

Poly z_power(long e) { return Poly::monomial(1, static_cast<std::size_t>(e)); }

}  // namespace

Poly orbit_norm(long n, long exponent, int k, long count) {
  if (n < 1 || count < 0) throw InvalidInput("orbit_norm needs n >= 1 and count >= 0");
  const CyclotomicRing ring(n);
  // norm(1 - z^(k^j) x^e) is norm(1 - z x^e) evaluated at z^(k^j).
  std::vector<Poly> term = ring.power_of_x(static_cast<std::size_t>(((exponent % n) + n) % n));
  for (auto& c : term) c = -(Poly::z() * c);
  term[0] += Poly::constant(1);
  const Poly base = ring.norm(term);
  Poly out = Poly::constant(1);
  for (long j = 0; j < count; ++j) out *= substitute_power(base, static_cast<std::size_t>(checked_power(k, j)));
  return out;
}

BeckerNormalization normalize(const MahlerEquation& eq, const std::optional<LaurentSeries>& f) {
  const int k = eq.k();
  const Poly& a0 = eq.coeff(0);
  const CyclotomicProfile profile = cyclotomic_profile(a0);
  const UnityClassification cls = classify_unity_zeros(profile, k);

  BeckerNormalization out;
  out.k = k;
  out.set_A = cls.set_A;
  out.fixed_type = cls.fixed_type;
  out.N = 1;
  for (const auto& u : cls.set_A) out.N = std::lcm(out.N, u.M);

  out.Q = Poly::constant(1);
  out.P = Poly::constant(1);
  for (const auto& u : cls.set_A) {
    // zeta-bar^(k^N) = x^(-k^N mod n) with x a primitive n-th root of unity.
    const long e = (u.order - power_mod(k, out.N, u.order)) % u.order;
    out.Q *= pow(orbit_norm(u.order, e, k, out.N), u.multiplicity);
    out.P *= pow(orbit_norm(u.order, u.order - 1, k, 1), u.multiplicity);
  }
  out.h = exact_div(substitute_power(out.Q, static_cast<std::size_t>(k)), out.Q * out.P);

  out.gamma = static_cast<long>(profile.z_power);
  const Poly rest = exact_div(a0, z_power(out.gamma) * out.P);
  out.c = rest.coeff(0);
  out.a = rest * (1 / out.c);

  std::vector<Poly> q{out.c * out.a};
  Poly carried = out.h;
  for (int i = 1; i <= eq.degree(); ++i) {
    if (i >= 2) {
      const auto s = static_cast<std::size_t>(eq.power(i - 1));
      carried *= substitute_power(out.P, s) * substitute_power(out.h, s);
    }
    q.push_back(z_power(out.gamma * (eq.power(i) - 2)) * eq.coeff(i) * carried);
    // q_i / (z^(k^i gamma) Q(z^(k^i))) must equal a_i / (z^(2 gamma) Q P).
    const Poly lhs = q.back() * z_power(2 * out.gamma) * out.Q * out.P;
    const Poly rhs = eq.coeff(i) * z_power(eq.power(i) * out.gamma) *
                     substitute_power(out.Q, static_cast<std::size_t>(eq.power(i)));
    if (lhs != rhs) throw InvariantViolation("normalized coefficient identity failed");
  }
  out.new_eq = MahlerEquation(k, std::move(q));
  if (f) out.g_check = verify(out.new_eq, normalized_series(out, *f));
  return out;
}

LaurentSeries normalized_series(const BeckerNormalization& norm, const LaurentSeries& f) {
  const long order = f.order() - std::min(0L, f.valuation());
  return (expand(RationalFunction(Poly::constant(1), norm.Q), order) * f).shift(-norm.gamma);
}

std::optional<MahlerEquation> becker_form_search(const LaurentSeries& g, int k, const SearchBounds& bounds) {
  if (k < 2 || bounds.depth_max < 1 || bounds.deg_max < 0 || bounds.margin < 0) {
    throw InvalidInput("invalid search bounds");
  }
  const long known = g.order() - std::min(0L, g.valuation());
  const long needed = static_cast<long>(bounds.depth_max + 1) * (bounds.deg_max + 1) + bounds.margin;
  if (known < needed) {
    throw InsufficientData("becker_form_search needs at least " + std::to_string(needed) + " known coefficients, got " +
                           std::to_string(known));
  }
  if (g.is_zero()) return MahlerEquation(k, {Poly::constant(1), Poly::constant(-1)});
  const long v = g.valuation();
  const long solve_end = g.order() - bounds.margin;
  for (int depth = 1; depth <= bounds.depth_max; ++depth) {
    const long e_lo = std::min(v, checked_power(k, depth) * v);
    for (int b = 0; b <= bounds.deg_max; ++b) {
      const auto width = static_cast<std::size_t>(depth * (b + 1));
      const auto height = static_cast<std::size_t>(std::max(0L, solve_end - e_lo));
      Matrix<Rational> system(height, width);
      std::vector<Rational> rhs(height);
      for (long e = e_lo; e < solve_end; ++e) {
        const auto row = static_cast<std::size_t>(e - e_lo);
        if (e >= v) rhs[row] = g.coeff(e);
        for (int i = 1; i <= depth; ++i) {
          const long ki = checked_power(k, i);
          for (int j = 0; j <= b; ++j) {
            const long t = e - j;
            if (t % ki != 0 || t / ki < v) continue;
            system(row, static_cast<std::size_t>((i - 1) * (b + 1) + j)) = g.coeff(t / ki);
          }
        }
      }
      const auto x = solve(system, rhs);
      if (!x) continue;
      std::vector<Poly> coeffs{Poly::constant(1)};
      for (int i = 0; i < depth; ++i) {
        std::vector<Rational> c(x->begin() + i * (b + 1), x->begin() + (i + 1) * (b + 1));
        for (auto& r : c) r = -r;
        coeffs.emplace_back(std::move(c));
      }
      while (coeffs.size() > 2 && coeffs.back().is_zero()) coeffs.pop_back();
      if (coeffs.back().is_zero()) continue;
      MahlerEquation eq(k, std::move(coeffs));
      if (verify(eq, g).holds()) return eq;
    }
  }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::regular: return "REGULAR";
    case Verdict::not_regular: return "NOT_REGULAR";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Certificate certify_regular(const MahlerEquation& eq) {
  Certificate cert;
  const CyclotomicProfile profile = cyclotomic_profile(eq.coeff(0));
  if (profile.remainder.degree() > 0) {
    cert.reason = "a_0 has zeros that are neither 0 nor roots of unity";
    return cert;
  }
  const UnityClassification cls = classify_unity_zeros(profile, eq.k());
  if (!cls.fixed_type.empty()) {
    cert.order = cls.fixed_type.front().order;
    cert.reason = "a_0 vanishes at a root of unity of order coprime to k";
    return cert;
  }
  cert.verdict = Verdict::regular;
  cert.criterion = "unity_zeros";
  cert.equation = eq;
  cert.reason = "every zero of a_0 is 0 or a root of unity of order not coprime to k";
  return cert;
}

Certificate certify_irregular(const MahlerEquation& eq, const LaurentSeries& f, int m_max) {
  if (m_max < 1) throw InvalidInput("certify_irregular needs m_max >= 1");
  if (!verify(eq, f).holds()) throw InvalidInput("certify_irregular: series does not solve the equation");
  Certificate cert;
  if (f.is_zero()) {
    cert.reason = "F vanishes to the known order";
    return cert;
  }
  std::vector<std::string> notes;
  for (int m = 1; m <= m_max; ++m) {
    const MahlerEquation eq_m = equation_for_power(eq, m);
    const long big_k = eq_m.k();
    std::string minimality = "unconditional";
    if (eq_m.degree() > 1) {
      minimality = "minimal up to search bounds";
      bool lower = false;
      for (int d = 1; d < eq_m.degree() && !lower; ++d) {
        try {
          lower = guess(f, static_cast<int>(big_k), {.d_max = d, .b_max = 8, .margin = 16, .d_min = d}).has_value();
        } catch (const InsufficientData&) {
          lower = true;
        }
      }
      if (lower) {
        notes.push_back("M=" + std::to_string(m) + ": minimality not established");
        continue;
      }
    }
    const CyclotomicProfile profile = cyclotomic_profile(eq_m.coeff(0));
    for (const auto& factor : profile.cyclo) {
      if (std::gcd(factor.order, static_cast<long>(eq.k())) != 1) continue;
      if (m % multiplicative_order(eq.k(), factor.order) != 0) continue;
      cert.verdict = Verdict::not_regular;
      cert.criterion = "unbounded_poles";
      cert.order = factor.order;
      cert.M = m;
      cert.equation = eq_m;
      cert.minimality = minimality;
      cert.reason = "a_0 of a content-free minimal equation vanishes at a nonzero xi with xi^(k^M) = xi";
      return cert;
    }
    notes.push_back("M=" + std::to_string(m) + ": no fixed zero of a_0");
  }
  for (const auto& n : notes) cert.reason += (cert.reason.empty() ? "" : "; ") + n;
  return cert;
}

Certificate certify(const MahlerEquation& eq, const LaurentSeries& f, int m_max) {
  Certificate regular = certify_regular(eq);
  if (regular.verdict == Verdict::regular) return regular;
  Certificate irregular = certify_irregular(eq, f, m_max);
  if (irregular.verdict == Verdict::inconclusive) irregular.reason = regular.reason + "; " + irregular.reason;
  return irregular;
}

BeckerNormalization with_shift(BeckerNormalization norm, long shift) {
  norm.gamma = shift;
  return norm;
}

std::optional<ShiftedBeckerForm> becker_form_for(const BeckerNormalization& norm, const LaurentSeries& f,
                                                 const SearchBounds& bounds, bool minimize_shift) {
  const long lowest = minimize_shift ? 0 : norm.gamma;
  for (long g = norm.gamma; g >= lowest; --g) {
    if (auto eq = becker_form_search(normalized_series(with_shift(norm, g), f), norm.k, bounds)) {
      return ShiftedBeckerForm{g, std::move(*eq)};
    }
  }
  return std::nullopt;
}

MahlerEquation witness_equation(const BeckerNormalization& norm, const MahlerEquation& becker_eq) {
  if (becker_eq.coeff(0) != Poly::constant(1)) throw InvalidInput("witness_equation needs a_0 = 1");
  if (becker_eq.k() != norm.k) throw InvalidInput("witness_equation: k mismatch");
  const int depth = becker_eq.degree();
  const long top = becker_eq.power(depth);
  std::vector<Poly> q_sub;
  for (int j = 0; j <= depth; ++j) q_sub.push_back(substitute_power(norm.Q, static_cast<std::size_t>(becker_eq.power(j))));
  auto others = [&](int skip) {
    Poly p = Poly::constant(1);
    for (int j = 0; j <= depth; ++j)
      if (j != skip) p *= q_sub[static_cast<std::size_t>(j)];
    return p;
  };
  std::vector<Poly> coeffs{z_power(norm.gamma * (top - 1)) * others(0)};
  for (int i = 1; i <= depth; ++i) {
    coeffs.push_back(becker_eq.coeff(i) * z_power(norm.gamma * (top - becker_eq.power(i))) * others(i));
  }
  return normalize_content(MahlerEquation(norm.k, std::move(coeffs)));
}

Decomposition structure_decompose(const MahlerEquation& eq, const LaurentSeries& f) {
  Decomposition out;
  const Poly& a0 = eq.coeff(0);
  out.delta = static_cast<long>(a0.valuation());
  out.rho = a0.trailing();
  out.Gamma = exact_div(a0, z_power(out.delta)) * (1 / out.rho);
  LaurentSeries j = f;
  for (long reach = 1; reach < f.order(); reach *= eq.k()) {
    j = substitute_power(out.Gamma, static_cast<std::size_t>(reach)) * j;
    ++out.factors;
  }
  out.J = j;
  return out;
}

MahlerEquation reciprocal_equation(const Poly& q, int k) {
  if (q.is_zero()) throw InvalidInput("reciprocal of the zero polynomial");
  return normalize_content(MahlerEquation(k, {q, -substitute_power(q, static_cast<std::size_t>(k))}));
}

ClosureResult reciprocal_rep(const Poly& q, int k, const ClosureCaps& caps) {
  if (q.is_zero() || q.coeff(0) != 1) throw InvalidInput("reciprocal_rep needs Q(0) = 1");
  const MahlerEquation eq = reciprocal_equation(q, k);
  if (certify_regular(eq).verdict != Verdict::regular) {
    throw InvalidInput("reciprocal_rep: 1/Q is not certified regular");
  }
  return closure_rep(eq, expand(RationalFunction(Poly::constant(1), q), 64), caps);
}

}  // namespace mahler
