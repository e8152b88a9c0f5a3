#include "reefkit/ramanujan.hpp"

#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "reefkit/error.hpp"

namespace reefkit {

namespace {

natural reduce(natural q, std::int64_t n) {
  const auto m = static_cast<std::int64_t>(q);
  std::int64_t r = n % m;
  if (r < 0) r += m;
  return static_cast<natural>(r);
}

// gcd(q, n mod q) with gcd(q, 0) = q.
natural gcd_mod(natural q, std::int64_t n) { return std::gcd(q, reduce(q, n)); }

}  // namespace

std::complex<double> additive_character(natural q, std::int64_t x) {
  if (q == 0) throw InvalidInput("additive_character: modulus must be positive");
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(reduce(q, x)) / static_cast<double>(q);
  return std::polar(1.0, theta);
}

std::int64_t ramanujan_sum(natural q, std::int64_t n) {
  if (q == 0) throw InvalidInput("ramanujan_sum: modulus must be positive");
  const natural g = gcd_mod(q, n);
  const natural r = q / g;
  const int m = mobius(r);
  if (m == 0) return 0;
  return m * static_cast<std::int64_t>(euler_phi(q) / euler_phi(r));
}

std::int64_t ramanujan_sum(const SieveTables& sieve, natural q, std::int64_t n) {
  if (q == 0) throw InvalidInput("ramanujan_sum: modulus must be positive");
  const natural g = gcd_mod(q, n);
  const natural r = q / g;
  const int m = sieve.mu(r);
  if (m == 0) return 0;
  return m * static_cast<std::int64_t>(sieve.phi(q) / sieve.phi(r));
}

std::vector<std::int64_t> ramanujan_period(const SieveTables& sieve, natural q) {
  std::vector<std::int64_t> out(q);
  for (natural r = 0; r < q; ++r) out[r] = ramanujan_sum(sieve, q, static_cast<std::int64_t>(r));
  return out;
}

std::vector<std::int64_t> ramanujan_period(natural q) {
  if (q == 0) throw InvalidInput("ramanujan_period: modulus must be positive");
  // Only gcd(q, r) matters; cache per divisor.
  const natural phi_q = euler_phi(q);
  std::vector<std::int64_t> out(q);
  std::vector<std::int64_t> by_gcd(q + 1, std::numeric_limits<std::int64_t>::min());
  for (natural r = 0; r < q; ++r) {
    const natural g = std::gcd(q, r);
    if (by_gcd[g] == std::numeric_limits<std::int64_t>::min()) {
      const natural s = q / g;
      const int m = mobius(s);
      by_gcd[g] = m == 0 ? 0 : m * static_cast<std::int64_t>(phi_q / euler_phi(s));
    }
    out[r] = by_gcd[g];
  }
  return out;
}

Rational divisibility_indicator(natural q, natural m) {
  if (q == 0 || m == 0) throw InvalidInput("divisibility_indicator: arguments must be positive");
  std::int64_t total = 0;
  for (natural l = 1; l * l <= q; ++l) {
    if (q % l != 0) continue;
    total += ramanujan_sum(l, static_cast<std::int64_t>(m));
    if (l * l != q) total += ramanujan_sum(q / l, static_cast<std::int64_t>(m));
  }
  return make_rational(total, static_cast<std::int64_t>(q));
}

DelangeCheck delange_bound_check(natural d, natural n) {
  if (d == 0 || n == 0) throw InvalidInput("delange_bound_check: arguments must be positive");
  DelangeCheck c;
  for (natural l = 1; l * l <= d; ++l) {
    if (d % l != 0) continue;
    c.lhs += static_cast<natural>(std::llabs(ramanujan_sum(l, static_cast<std::int64_t>(n))));
    if (l * l != d) c.lhs += static_cast<natural>(std::llabs(ramanujan_sum(d / l, static_cast<std::int64_t>(n))));
  }
  c.rhs = n << omega(d);
  c.holds = c.lhs <= c.rhs;
  return c;
}

DelangeCheck delange_bound_check(const SieveTables& sieve, natural d, natural n) {
  if (d == 0 || n == 0) throw InvalidInput("delange_bound_check: arguments must be positive");
  DelangeCheck c;
  for (natural l : divisors(sieve, d)) {
    c.lhs += static_cast<natural>(std::llabs(ramanujan_sum(sieve, l, static_cast<std::int64_t>(n))));
  }
  c.rhs = n << sieve.omega(d);
  c.holds = c.lhs <= c.rhs;
  return c;
}

Rational orthogonality_average(natural q, natural l, natural n, natural lcm_budget) {
  if (q == 0 || l == 0 || n == 0) throw InvalidInput("orthogonality_average: arguments must be positive");
  const natural period = std::lcm(q, l);
  if (period > lcm_budget) {
    throw BudgetExceeded("orthogonality_average: period " + std::to_string(period) + " exceeds budget");
  }
  const auto cq = ramanujan_period(q);
  const auto cl = ramanujan_period(l);
  std::int64_t total = 0;
  for (natural a = 1; a <= period; ++a) total += cq[(n + a) % q] * cl[a % l];
  return make_rational(total, static_cast<std::int64_t>(period));
}

}  // namespace reefkit
