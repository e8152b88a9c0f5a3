#include "reefkit/twin_primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "reefkit/error.hpp"
#include "reefkit/kernels.hpp"
#include "reefkit/ramanujan.hpp"

namespace reefkit {

namespace {

void require_sieve(const SieveTables& sieve, natural top, const char* what) {
  if (sieve.limit() < top) {
    throw InvalidInput(std::string(what) + ": insufficient sieve (need " + std::to_string(top) + ", have " +
                       std::to_string(sieve.limit()) + ")");
  }
}

void require_even_shift(natural shift) {
  if (shift < 2 || shift % 2 != 0) throw InvalidInput("shift must be an even natural >= 2");
}

double series_term(const SieveTables& sieve, natural shift, natural l) {
  if (sieve.mu_table()[l] == 0) return 0.0;
  const double c = static_cast<double>(ramanujan_sum(sieve, l, static_cast<std::int64_t>(shift)));
  const double phi = sieve.phi_table()[l];
  return c / (phi * phi);
}

}  // namespace

LambdaCoefficient lambda_coefficient(const SieveTables& sieve, natural n_limit, natural q) {
  if (q == 0 || q > n_limit) throw InvalidInput("lambda_coefficient: need 1 <= q <= N");
  require_sieve(sieve, n_limit, "lambda_coefficient");
  const auto& mu = sieve.mu_table();
  double s = 0.0;
  for (natural d = q; d <= n_limit; d += q) {
    if (mu[d] == 0) continue;
    const double dd = static_cast<double>(d);
    s += -(mu[d] * std::log(dd)) / dd;
  }
  LambdaCoefficient c;
  c.n_limit = n_limit;
  c.q = q;
  c.value = s;
  c.reference = static_cast<double>(sieve.mu(q)) / static_cast<double>(sieve.phi(q));
  c.scaled_error = std::fabs(c.value - c.reference) * static_cast<double>(q);
  const double log_n = std::log(static_cast<double>(n_limit));
  c.bound_constant = log_n > 0.0 ? std::fabs(c.value) * static_cast<double>(q) / (log_n * log_n) : 0.0;
  return c;
}

std::vector<LambdaCoefficient> coefficient_table(const SieveTables& sieve, natural n_limit, natural q_max) {
  if (q_max * q_max > n_limit) throw InvalidInput("coefficient_table: q_max must not exceed sqrt(N)");
  std::vector<LambdaCoefficient> rows(q_max);
  kernels::parallel_fill(rows, [&](std::size_t i) { return lambda_coefficient(sieve, n_limit, i + 1); });
  return rows;
}

double twin_prime_product(const SieveTables& sieve) {
  double prod = 1.0;
  for (natural p = 3; p <= sieve.limit(); ++p) {
    if (!sieve.is_prime(p)) continue;
    const double pm1 = static_cast<double>(p) - 1.0;
    prod *= 1.0 - 1.0 / (pm1 * pm1);
  }
  return prod;
}

double serial::singular_series_partial(const SieveTables& sieve, natural shift, natural l_max) {
  require_even_shift(shift);
  require_sieve(sieve, l_max, "singular_series");
  return serial::ascending_sum(1, l_max, [&](natural l) { return series_term(sieve, shift, l); });
}

double singular_series_partial(const SieveTables& sieve, natural shift, natural l_max) {
  require_even_shift(shift);
  require_sieve(sieve, l_max, "singular_series");
  return kernels::blocked_sum(1, l_max, [&](natural l) { return series_term(sieve, shift, l); });
}

SingularSeriesValue singular_series(const SieveTables& sieve, natural shift, natural l_max) {
  require_even_shift(shift);
  if (l_max == 0) throw InvalidInput("singular_series: l_max must be positive");
  require_sieve(sieve, 10 * l_max, "singular_series");
  SingularSeriesValue v;
  v.shift = shift;
  v.l_max = l_max;
  v.partial = singular_series_partial(sieve, shift, l_max);
  v.tail_estimate = kernels::blocked_sum(l_max + 1, 10 * l_max, [&](natural l) {
    if (sieve.mu_table()[l] == 0) return 0.0;
    const double phi = sieve.phi_table()[l];
    return static_cast<double>(std::gcd(shift, l)) / (phi * phi);
  });
  double local = 1.0;
  for (auto [p, e] : factorize(shift)) {
    if (p == 2) continue;
    const double pd = static_cast<double>(p);
    local *= (pd - 1.0) / (pd - 2.0);
  }
  v.product_oracle = 2.0 * twin_prime_product(sieve) * local;
  return v;
}

double serial::hl_correlation(const SieveTables& sieve, natural n_limit, natural shift) {
  require_sieve(sieve, n_limit + shift, "hl_correlation");
  const auto& lam = sieve.lambda_table();
  double s = 0.0;
  for (natural n = 1; n <= n_limit; ++n) {
    const double x = lam[n];
    if (x == 0.0) continue;
    const double y = lam[n + shift];
    if (y != 0.0) s += x * y;
  }
  return s;
}

double hl_correlation(const SieveTables& sieve, natural n_limit, natural shift) {
  require_sieve(sieve, n_limit + shift, "hl_correlation");
  const auto& lam = sieve.lambda_table();
  return kernels::blocked_sum(1, n_limit, [&](natural n) { return lam[n] * lam[n + shift]; });
}

HlReport hl_report(const SieveTables& sieve, natural n_limit, natural k_min, natural k_max, natural l_max,
                   double delta) {
  if (k_min == 0 || k_max < k_min) throw InvalidInput("hl_report: need 1 <= k_min <= k_max");
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidInput("hl_report: delta must lie in (0, 1/2)");
  if (n_limit < 2) throw InvalidInput("hl_report: N must be at least 2");
  require_sieve(sieve, std::max(n_limit + 2 * k_max, 10 * l_max), "hl_report");
  HlReport r;
  r.n_limit = n_limit;
  r.l_max = l_max;
  r.delta = delta;
  r.rows.resize(k_max - k_min + 1);
  const double log_n = std::log(static_cast<double>(n_limit));
  // One row per k; each inner sum runs in its fixed serial order.
  kernels::parallel_fill(r.rows, [&](std::size_t i) {
    const natural k = k_min + i;
    HlRow row;
    row.shift = 2 * k;
    row.correlation = serial::hl_correlation(sieve, n_limit, row.shift);
    row.singular = serial::singular_series_partial(sieve, row.shift, l_max);
    row.prediction = row.singular * static_cast<double>(n_limit);
    row.ratio = row.correlation / row.prediction;
    row.within_delta_range = std::log(static_cast<double>(k)) / log_n < 1.0 - delta;
    return row;
  });
  for (const auto& row : r.rows) {
    if (!row.within_delta_range) {
      r.warnings.push_back("shift " + std::to_string(row.shift) + " violates log k / log N < 1 - delta");
    }
  }
  return r;
}

PntCheck chebyshev_pnt_check(const SieveTables& sieve, natural n_limit) {
  if (n_limit == 0) throw InvalidInput("chebyshev_pnt_check: N must be positive");
  require_sieve(sieve, n_limit, "chebyshev_pnt_check");
  const auto& lam = sieve.lambda_table();
  PntCheck c;
  c.n_limit = n_limit;
  c.theta_ratio = serial::ascending_sum(1, n_limit, [&](natural n) { return lam[n]; }) / static_cast<double>(n_limit);
  if (n_limit >= 10'000) c.within_band = c.theta_ratio >= 0.8 && c.theta_ratio <= 1.2;
  return c;
}

GcdTailSums gcd_tail_sums(natural shift, natural n_limit) {
  if (shift == 0) throw InvalidInput("gcd_tail_sums: shift must be positive");
  if (n_limit < 4) throw InvalidInput("gcd_tail_sums: N must be at least 4");
  GcdTailSums t;
  t.shift = shift;
  t.n_limit = n_limit;
  natural root = static_cast<natural>(std::sqrt(static_cast<double>(n_limit)));
  while (root * root > n_limit) --root;
  while ((root + 1) * (root + 1) <= n_limit) ++root;

  const auto gcd_weight = [shift](natural l) { return static_cast<double>(std::gcd(shift, l)); };
  t.low = serial::ascending_sum(1, root, [&](natural l) {
    const double ld = static_cast<double>(l);
    return gcd_weight(l) / (ld * ld);
  });
  t.mid = serial::ascending_sum(root + 1, n_limit, [&](natural l) {
    const double ld = static_cast<double>(l);
    return gcd_weight(l) / (ld * ld);
  });
  // (a, l) = sum_{d | (a, l)} phi(d), so
  //   sum_l (a,l) h(l) = sum_{d | a} phi(d) sum_{m} h(d m),
  // and with h(l) = log^2(l) / l^2 the inner sum splits into three
  // shift-free prefix sums of log^k(m) / m^2 read at m = x / d.
  const natural top = n_limit * n_limit;
  std::vector<natural> divs;
  for (natural d = 1; d * d <= shift; ++d) {
    if (shift % d != 0) continue;
    divs.push_back(d);
    if (d * d != shift) divs.push_back(shift / d);
  }
  std::sort(divs.begin(), divs.end());
  struct Breakpoint {
    natural m;
    std::size_t slot;
  };
  std::vector<Breakpoint> points;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    points.push_back({root / divs[i], 2 * i});
    points.push_back({top / divs[i], 2 * i + 1});
  }
  std::sort(points.begin(), points.end(), [](const Breakpoint& x, const Breakpoint& y) { return x.m < y.m; });
  std::vector<std::array<double, 3>> at(points.size());
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  std::size_t next = 0;
  while (next < points.size() && points[next].m == 0) at[points[next++].slot] = acc;
  for (natural m = 1; next < points.size(); ++m) {
    const double md = static_cast<double>(m);
    const double lm = std::log(md);
    const double inv = 1.0 / (md * md);
    acc[0] += inv;
    acc[1] += lm * inv;
    acc[2] += lm * lm * inv;
    while (next < points.size() && points[next].m == m) at[points[next++].slot] = acc;
  }
  double high = 0.0;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    const double d = static_cast<double>(divs[i]);
    const double ld = std::log(d);
    const auto& lo = at[2 * i];
    const auto& hi = at[2 * i + 1];
    const double s0 = hi[0] - lo[0];
    const double s1 = hi[1] - lo[1];
    const double s2 = hi[2] - lo[2];
    high += static_cast<double>(euler_phi(divs[i])) * (ld * ld * s0 + 2.0 * ld * s1 + s2) / (d * d);
  }
  t.high = high;

  const double log_n = std::log(static_cast<double>(n_limit));
  const double root_n = std::sqrt(static_cast<double>(n_limit));
  const double a_eps = std::pow(static_cast<double>(shift), 0.1);
  t.low_constant = t.low / log_n;
  t.mid_constant = t.mid * root_n / a_eps;
  t.high_constant = t.high * root_n / (a_eps * log_n * log_n);
  return t;
}

}  // namespace reefkit
