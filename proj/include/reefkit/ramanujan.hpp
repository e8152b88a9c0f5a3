#pragma once

// Ramanujan sums c_q(n) and the finite identities built on them.

#include <complex>
#include <cstdint>
#include <vector>

#include "reefkit/arith_core.hpp"
#include "reefkit/scalar.hpp"

namespace reefkit {

/// e_q(x) = exp(2 pi i x / q).
std::complex<double> additive_character(natural q, std::int64_t x);

/// c_q(n) by the closed form mu(q/g) phi(q) / phi(q/g), g = gcd(q, n).
/// Negative n reduce mod q. Throws InvalidInput for q = 0.
std::int64_t ramanujan_sum(natural q, std::int64_t n);

/// Same value, with mu/phi looked up in the sieve (q <= sieve.limit()).
std::int64_t ramanujan_sum(const SieveTables& sieve, natural q, std::int64_t n);

/// One period of c_q: values c_q(0), ..., c_q(q-1).
std::vector<std::int64_t> ramanujan_period(const SieveTables& sieve, natural q);
std::vector<std::int64_t> ramanujan_period(natural q);

/// (1/q) sum_{l | q} c_l(m), exactly.
Rational divisibility_indicator(natural q, natural m);

struct DelangeCheck {
  natural lhs = 0;  // sum_{l | d} |c_l(n)|
  natural rhs = 0;  // n * 2^omega(d)
  bool holds = false;
};

DelangeCheck delange_bound_check(natural d, natural n);
DelangeCheck delange_bound_check(const SieveTables& sieve, natural d, natural n);

/// Average of c_q(n + a) c_l(a) over a = 1..lcm(q, l). The product is
/// periodic, so this is the Cesaro mean exactly.
Rational orthogonality_average(natural q, natural l, natural n, natural lcm_budget = 1'000'000);

}  // namespace reefkit
