#include <map>
#include <mutex>
#include <numeric>

#include "mahler/errors.hpp"
#include "mahler/poly.hpp"

namespace mahler {

namespace {

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Poly compute_cyclotomic(long n) {
  // Phi_{mp}(z) = Phi_m(z^p) / Phi_m(z) for a prime p not dividing m, and
  // Phi_n(z) = Phi_rad(n)(z^(n / rad(n))).
  Poly phi{-1, 1};
  long rad = 1;
  for (long p : prime_factors(n)) {
    phi = exact_div(substitute_power(phi, static_cast<std::size_t>(p)), phi);
    rad *= p;
  }
  return substitute_power(phi, static_cast<std::size_t>(n / rad));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

}  // namespace

long euler_phi(long n) {
  if (n < 1) throw InvalidInput("euler_phi requires n >= 1");
  long result = n;
  for (long p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

const Poly& cyclotomic(long n) {
  if (n < 1) throw InvalidInput("cyclotomic polynomial order must be >= 1");
  static std::mutex lock;
  static std::map<long, Poly> cache;
  std::lock_guard guard(lock);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_cyclotomic(n)).first;
  return it->second;
}

CyclotomicProfile cyclotomic_profile(const Poly& p) {
  if (p.is_zero()) throw InvalidInput("cyclotomic profile of the zero polynomial");
  CyclotomicProfile profile;
  profile.unit = p.leading();
  profile.z_power = p.valuation();
  Poly rest = monic(Poly(std::vector<Rational>(p.coeffs().begin() + static_cast<long>(profile.z_power),
                                               p.coeffs().end())));
  // phi(n) >= sqrt(n / 2), so every cyclotomic divisor has n <= 2 deg^2.
  for (long n = 1; rest.degree() >= 1 && n <= 2 * rest.degree() * rest.degree(); ++n) {
    if (euler_phi(n) > rest.degree()) continue;
    const Poly& phi = cyclotomic(n);
    unsigned e = 0;
    for (;;) {
      auto [quot, rem] = divrem(rest, phi);
      if (!rem.is_zero()) break;
      rest = std::move(quot);
      ++e;
    }
    if (e > 0) profile.cyclo.push_back({n, e});
  }
  profile.remainder = std::move(rest);
  return profile;
}

Poly reconstruct(const CyclotomicProfile& profile) {
  Poly out = Poly::monomial(profile.unit, profile.z_power) * profile.remainder;
  for (const auto& f : profile.cyclo) out *= pow(cyclotomic(f.order), f.multiplicity);
  return out;
}

long multiplicative_order(long k, long n) {
  if (std::gcd(k, n) != 1) throw InvalidInput("multiplicative order needs gcd(k, n) = 1");
  if (n == 1) return 1;
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t base = static_cast<std::uint64_t>(k) % un;
  std::uint64_t x = base;
  long m = 1;
  while (x != 1) {
    x = mulmod(x, base, un);
    ++m;
  }
  return m;
}

long preperiod_stabilizer(long k, long n) {
  if (n < 1) throw InvalidInput("order must be >= 1");
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t base = static_cast<std::uint64_t>(k) % un;
  // Track k^M and k^(2M) modulo n.
  std::uint64_t single = base % un;
  std::uint64_t twice = mulmod(single, single, un);
  long m = 1;
  while (single != twice) {
    single = mulmod(single, base, un);
    twice = mulmod(mulmod(twice, base, un), base, un);
    ++m;
  }
  return m;
}

UnityClassification classify_unity_zeros(const CyclotomicProfile& profile, int k) {
  if (k < 2) throw InvalidInput("k must be >= 2");
  UnityClassification out;
  for (const auto& f : profile.cyclo) {
    if (std::gcd(f.order, static_cast<long>(k)) == 1) {
      out.fixed_type.push_back({f.order, f.multiplicity, multiplicative_order(k, f.order)});
    } else {
      out.set_A.push_back({f.order, f.multiplicity, preperiod_stabilizer(k, f.order)});
    }
  }
  return out;
}

}  // namespace mahler
