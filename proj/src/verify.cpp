#include "reefkit/verify.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numeric>

#include "reefkit/correlation.hpp"
#include "reefkit/instances.hpp"
#include "reefkit/reef.hpp"
#include "reefkit/twin_primes.hpp"

namespace reefkit {

namespace {

struct Tally {
  std::size_t cases = 0;
  std::size_t violations = 0;
  void record(bool ok) {
    ++cases;
    if (!ok) ++violations;
  }
};

void add_tally(DiagnosticsReport& r, const std::string& name, const Tally& t) {
  r.column("check").values.push_back(make_cell(name));
  r.column("cases").values.push_back(make_cell(static_cast<std::uint64_t>(t.cases)));
  r.column("violations").values.push_back(make_cell(static_cast<std::uint64_t>(t.violations)));
  r.add_check(name, t.violations == 0 && t.cases > 0, fmt::format("{} cases, {} violations", t.cases, t.violations));
}

std::vector<natural> range(natural lo, natural hi) {
  std::vector<natural> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

}  // namespace

DiagnosticsReport verify_identities(const ExperimentConfig& config) {
  DiagnosticsReport r;
  r.title = "identities";
  r.add_column("check");
  r.add_column("cases");
  r.add_column("violations");
  r.add_meta("suite", "identities");
  r.add_meta("seed", std::to_string(config.random_seed));
  r.add_meta("mode", "rational");

  const SieveTables sieve = build_sieve(10'000);

  {
    Tally t;
    for (natural n = 1; n <= sieve.limit(); ++n) {
      std::int64_t mu_sum = 0;
      natural phi_sum = 0;
      double lambda_sum = 0.0;
      for (natural d : divisors(sieve, n)) {
        mu_sum += sieve.mu(d);
        phi_sum += sieve.phi(d);
        lambda_sum += sieve.lambda(d);
      }
      t.record(mu_sum == (n == 1 ? 1 : 0) && phi_sum == n &&
               std::fabs(lambda_sum - std::log(static_cast<double>(n))) <= 1e-9);
    }
    add_tally(r, "sieve_divisor_sums", t);
  }
  {
    Tally t;
    for (natural q = 1; q <= 100; ++q)
      for (natural m = 1; m <= 1000; ++m) t.record(divisibility_indicator(q, m) == (m % q == 0 ? 1 : 0));
    add_tally(r, "indicator_lemma", t);
  }
  {
    Tally t;
    for (natural d = 1; d <= 2000; ++d)
      for (natural n = 1; n <= 200; ++n) t.record(delange_bound_check(sieve, d, n).holds);
    add_tally(r, "delange_bound", t);
  }
  {
    Tally t;
    for (natural q = 1; q <= 200; ++q)
      for (natural n = 1; n <= 200; ++n)
        t.record(static_cast<natural>(std::llabs(ramanujan_sum(sieve, q, static_cast<std::int64_t>(n)))) <=
                 std::gcd(q, n));
    add_tally(r, "gcd_bound", t);
  }
  {
    Tally t;
    for (natural q = 1; q <= 12; ++q)
      for (natural l = 1; l <= 12; ++l)
        for (natural n = 1; n <= 50; ++n) {
          const Rational expected = q == l ? make_rational(ramanujan_sum(q, static_cast<std::int64_t>(n))) : Rational(0);
          t.record(orthogonality_average(q, l, n, config.lcm_budget) == expected);
        }
    add_tally(r, "orthogonality", t);
  }

  SeededRng rng(config.random_seed);
  {
    Tally t;
    for (int inst = 0; inst < 50; ++inst) {
      const auto g = random_transform(rng, 30, 30, 40);
      for (natural range_q : {5, 10, 30}) {
        const auto e = finite_expansion(g, range_q);
        const auto direct = truncate(g, range_q, 500);
        for (natural m = 1; m <= 500; ++m) t.record(evaluate_expansion(sieve, e, m) == direct[m]);
      }
    }
    add_tally(r, "finite_expansion_exact", t);
  }
  {
    Tally t;
    for (int inst = 0; inst < 100; ++inst) {
      const natural n_limit = static_cast<natural>(rng.integer(1, 200));
      const auto f = random_table(rng, n_limit, 70);
      const auto g = random_transform(rng, n_limit, n_limit, 30);
      std::vector<natural> shifts;
      for (int i = 0; i < 6; ++i) shifts.push_back(static_cast<natural>(rng.integer(0, 50)));
      const auto truncated = truncated_profile(f, g, n_limit, shifts);
      const auto expanded = expansion_profile(f, finite_expansion(g, n_limit), n_limit, shifts);
      for (std::size_t i = 0; i < shifts.size(); ++i) t.record(truncated.values[i] == expanded.values[i]);
    }
    add_tally(r, "expansion_correlation_identity", t);
  }
  {
    Tally agree, bound;
    for (int inst = 0; inst < 100; ++inst) {
      const natural n_limit = static_cast<natural>(rng.integer(1, 60));
      const natural a = static_cast<natural>(rng.integer(1, 30));
      const auto f = random_table(rng, n_limit, 80);
      const auto g = random_transform(rng, n_limit + a, n_limit + a, 50);
      const auto e = truncation_error(f, g, n_limit, a);
      agree.record(e.routes_agree);
      bound.record(e.holds);
    }
    add_tally(r, "truncation_error_two_routes", agree);
    add_tally(r, "truncation_error_bound", bound);
  }
  {
    Tally t;
    for (int inst = 0; inst < 20; ++inst) {
      const auto f = random_table(rng, 200, 60);
      const auto back = inverse_transform(eratosthenes_transform(sieve, f), 200);
      t.record(back == f);
    }
    add_tally(r, "mobius_round_trip", t);
  }
  {
    Tally t;
    for (int inst = 0; inst < 10; ++inst) {
      const auto fp = random_transform(rng, 60, 60, 30);
      const auto F = inverse_transform(fp, 200);
      for (natural n = 1; n <= 200; ++n) {
        Rational by_d(0), by_l(0);
        for (natural d = 1; d <= 60; ++d) {
          if (is_zero(fp[d])) continue;
          std::int64_t s = 0;
          for (natural l = 1; l <= d; ++l)
            if (d % l == 0) s += ramanujan_sum(l, static_cast<std::int64_t>(n));
          by_d += fp[d] * make_rational(s, static_cast<std::int64_t>(d));
        }
        for (natural l = 1; l <= 60; ++l)
          by_l += wintner_delange_coefficient(fp, l, 60) * make_rational(ramanujan_sum(l, static_cast<std::int64_t>(n)));
        t.record(by_d == F[n] && by_l == F[n]);
      }
    }
    add_tally(r, "double_series_exchange", t);
  }
  {
    Tally t;
    const std::vector<natural> support{1, 2, 3, 5, 6, 10, 15, 30};
    for (int inst = 0; inst < 5; ++inst) {
      const auto f = random_table(rng, 60, 80);
      const auto g = random_transform_on(rng, 60, support);
      const auto coeffs = reef_coefficients(f, finite_expansion(g, 60), 60);
      for (natural l = 1; l <= 30; ++l) {
        t.record(carmichael_coefficient_exact(f, g, 60, l, config.lcm_budget) == coeffs.at(l));
      }
    }
    add_tally(r, "carmichael_closed_form", t);
  }
  {
    Tally t;
    // f = 1 over a full period of the divisors of 60.
    const EratosthenesTransform<Rational> g60 = random_transform_on(rng, 60, {1, 2, 3, 4, 5, 6});
    const auto one = tabulate<Rational>(60, [](natural) { return Rational(1); }, "one");
    for (const auto& row : reef_residual(one, g60, 60, range(1, 120)).rows) t.record(is_zero(row.residual));
    // f = c_r with g' on divisors of 12, N a multiple of 12.
    for (natural rr : {1, 2, 3, 4, 6, 12}) {
      const auto f = tabulate<Rational>(24, [rr](natural n) { return make_rational(ramanujan_sum(rr, static_cast<std::int64_t>(n))); });
      const auto g = random_transform_on(rng, 24, {1, 2, 3, 4, 6, 12});
      for (const auto& row : reef_residual(f, g, 24, range(1, 48)).rows) t.record(is_zero(row.residual));
    }
    add_tally(r, "explicit_formula_even_instances", t);
  }
  {
    Tally t;
    for (int inst = 0; inst < 10; ++inst) {
      const natural n_limit = static_cast<natural>(rng.integer(5, 40));
      const auto f = random_table(rng, n_limit, 80);
      const auto g = random_transform(rng, n_limit, n_limit, 40);
      const auto prof = truncated_profile(f, g, n_limit, range(1, 100));
      std::vector<Rational> c(101);
      for (natural a = 1; a <= 100; ++a) c[a] = prof.values[a - 1];
      const auto back = shift_inverse(shift_eratosthenes(sieve, c, 100));
      for (natural a = 1; a <= 100; ++a) t.record(back[a] == c[a]);
    }
    add_tally(r, "shift_transform_round_trip", t);
  }
  return r;
}

natural statistics_sieve_limit() { return 1'000'016; }

std::map<std::string, double> collect_statistics(const SieveTables& sieve) {
  std::map<std::string, double> s;
  for (natural n_limit : {1'000, 10'000, 100'000}) {
    for (natural q : {1, 2, 3, 5, 6}) {
      s[fmt::format("lambda_hat.N{}.q{}", n_limit, q)] = lambda_coefficient(sieve, n_limit, q).value;
    }
  }
  s["pnt.N10000"] = chebyshev_pnt_check(sieve, 10'000).theta_ratio;
  s["pnt.N1000000"] = chebyshev_pnt_check(sieve, 1'000'000).theta_ratio;
  const auto hl = hl_report(sieve, 1'000'000, 1, 8, 100'000);
  for (const auto& row : hl.rows) {
    s[fmt::format("hl.correlation.shift{}", row.shift)] = row.correlation;
    s[fmt::format("hl.ratio.shift{}", row.shift)] = row.ratio;
    s[fmt::format("singular.partial.shift{}", row.shift)] = row.singular;
  }
  return s;
}

DiagnosticsReport verify_statistics(const ExperimentConfig& config, const SieveTables& sieve,
                                    const std::map<std::string, double>& baselines) {
  DiagnosticsReport r;
  r.title = "statistics";
  r.add_meta("suite", "statistics");
  r.add_meta("mode", "real");
  auto& names = r.add_column("statistic");
  auto& values = r.add_column("value");
  auto& pins = r.add_column("baseline");

  const auto stats = collect_statistics(sieve);
  for (const auto& [name, value] : stats) {
    names.values.push_back(make_cell(name));
    values.values.push_back(make_cell(value));
    const auto it = baselines.find(name);
    if (it == baselines.end()) {
      pins.values.push_back(make_cell(""));
      r.add_verdict("pin:" + name, VerdictStatus::report_only, "no baseline");
      continue;
    }
    pins.values.push_back(make_cell(it->second));
    // lambda_hat and singular sums are plain fixed-order double sums.
    const bool exact_like = name.rfind("lambda_hat.", 0) == 0 || name.rfind("singular.", 0) == 0;
    const double tol = exact_like ? config.exact_tolerance : config.sieve_tolerance;
    const double rel = std::fabs(value - it->second) / std::max(std::fabs(it->second), 1e-300);
    r.add_check("pin:" + name, rel <= tol, fmt::format("relative difference {}", format_real(rel)));
  }

  const double pnt = stats.at("pnt.N1000000");
  r.add_check("pnt_band_1e6", pnt >= 0.99 && pnt <= 1.01, format_real(pnt));
  for (natural k = 1; k <= 8; ++k) {
    const double ratio = stats.at(fmt::format("hl.ratio.shift{}", 2 * k));
    r.add_check(fmt::format("hl_ratio_band.shift{}", 2 * k), ratio >= 0.9 && ratio <= 1.1, format_real(ratio));
  }
  for (natural k = 1; k <= 8; ++k) {
    const auto s = singular_series(sieve, 2 * k, 100'000);
    r.add_check(fmt::format("singular_vs_product.shift{}", 2 * k), std::fabs(s.partial - s.product_oracle) <= 1e-3,
                fmt::format("partial {} product {}", format_real(s.partial), format_real(s.product_oracle)));
  }
  return r;
}

}  // namespace reefkit
