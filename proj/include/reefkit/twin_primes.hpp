#pragma once

// The von Mangoldt case f = g = Lambda with even shift a = 2k: truncated
// Ramanujan coefficients, the twin-prime singular series and the comparison
// of sum_{n <= N} Lambda(n) Lambda(n + 2k) with S(2k) N.
//
// Every quantity here is a real-mode diagnostic. Asymptotic statements are
// compared against pinned desk-scale values, never certified.

#include <optional>
#include <string>
#include <vector>

#include "reefkit/arith_core.hpp"

namespace reefkit {

struct LambdaCoefficient {
  natural n_limit = 0;
  natural q = 0;
  double value = 0.0;       // -sum_{d <= N, q | d} mu(d) log(d) / d
  double reference = 0.0;   // mu(q) / phi(q)
  double scaled_error = 0.0;    // |value - reference| * q
  double bound_constant = 0.0;  // |value| q / log^2 N
};

/// Needs q <= N and the sieve through N.
LambdaCoefficient lambda_coefficient(const SieveTables& sieve, natural n_limit, natural q);

/// Rows for q = 1..q_max; requires q_max <= sqrt(N).
std::vector<LambdaCoefficient> coefficient_table(const SieveTables& sieve, natural n_limit, natural q_max);

struct SingularSeriesValue {
  natural shift = 0;
  natural l_max = 0;
  double partial = 0.0;         // sum_{l <= l_max} mu^2(l) c_l(a) / phi^2(l)
  double tail_estimate = 0.0;   // sum_{l_max < l <= 10 l_max} mu^2(l) gcd(a, l) / phi^2(l)
  double product_oracle = 0.0;  // 2 prod_{p>2} (1 - 1/(p-1)^2) prod_{p | a, p > 2} (p-1)/(p-2)
};

/// prod_{2 < p <= limit} (1 - 1/(p-1)^2) over the sieve's primes.
double twin_prime_product(const SieveTables& sieve);

/// Needs an even shift >= 2 and the sieve through 10 * l_max.
SingularSeriesValue singular_series(const SieveTables& sieve, natural shift, natural l_max);

namespace serial {
/// sum_{n <= N} Lambda(n) Lambda(n + shift), ascending n.
double hl_correlation(const SieveTables& sieve, natural n_limit, natural shift);
double singular_series_partial(const SieveTables& sieve, natural shift, natural l_max);
}  // namespace serial

/// Same sums through the blocked OpenMP reduction (fixed block order).
double hl_correlation(const SieveTables& sieve, natural n_limit, natural shift);
double singular_series_partial(const SieveTables& sieve, natural shift, natural l_max);

struct HlRow {
  natural shift = 0;
  double correlation = 0.0;
  double singular = 0.0;
  double prediction = 0.0;  // singular * N
  double ratio = 0.0;
  bool within_delta_range = true;  // log k / log N < 1 - delta
};

struct HlReport {
  natural n_limit = 0;
  natural l_max = 0;
  double delta = 0.25;
  std::vector<HlRow> rows;
  std::vector<std::string> warnings;
};

/// Rows for 2k, k = k_min..k_max. Needs the sieve through max(N + 2 k_max, 10 l_max).
HlReport hl_report(const SieveTables& sieve, natural n_limit, natural k_min, natural k_max, natural l_max,
                   double delta = 0.25);

struct PntCheck {
  natural n_limit = 0;
  double theta_ratio = 0.0;          // sum_{n <= N} Lambda(n) / N
  std::optional<bool> within_band;   // ratio in [0.8, 1.2]; only judged for N >= 10^4
};

PntCheck chebyshev_pnt_check(const SieveTables& sieve, natural n_limit);

struct GcdTailSums {
  natural shift = 0;
  natural n_limit = 0;
  double low = 0.0;   // sum_{l <= sqrt N} (a, l) / l^2
  double mid = 0.0;   // sum_{sqrt N < l <= N} (a, l) / l^2
  double high = 0.0;  // sum_{sqrt N < l <= N^2} log^2(l) (a, l) / l^2
  double low_constant = 0.0;   // low / log N
  double mid_constant = 0.0;   // mid sqrt(N) / a^0.1
  double high_constant = 0.0;  // high sqrt(N) / (a^0.1 log^2 N)
};

/// Needs N >= 4.
GcdTailSums gcd_tail_sums(natural shift, natural n_limit);

}  // namespace reefkit
