// Acceptance run: one PASS/FAIL line per criterion, with its runtime.

#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "cli.hpp"
#include "pinned_values.hpp"
#include "reefkit/correlation.hpp"
#include "reefkit/instances.hpp"
#include "reefkit/reef.hpp"
#include "reefkit/report.hpp"
#include "reefkit/twin_primes.hpp"

using namespace reefkit;

namespace {

constexpr std::uint64_t kSeed = 20170905;

// Tolerances and limits.
constexpr double kSingularVsProduct = 1e-3;
constexpr double kRatioLaw = 1e-6;
constexpr double kHlLow = 0.9, kHlHigh = 1.1;
constexpr double kPinRelative = 1e-9;
constexpr double kPntLow = 0.99, kPntHigh = 1.01;

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: none
  std::function<Outcome()> run;
};

std::vector<natural> iota_from(natural lo, natural hi) {
  std::vector<natural> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }

const SieveTables& sieve() {
  static const SieveTables s = build_sieve(1'000'016);
  return s;
}

Outcome fre_exactness() {
  SeededRng rng(kSeed);
  std::size_t cases = 0, bad = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const auto gp = random_transform(rng, 30, 30);
    for (natural big_q : {5, 10, 30}) {
      const auto e = finite_expansion(gp, big_q);
      const auto direct = truncate(gp, big_q, 500);
      for (natural m = 1; m <= 500; ++m) {
        ++cases;
        bad += evaluate_expansion(e, m) != direct[m];
      }
    }
  }
  return {bad == 0, fmt::format("{} evaluations, {} mismatches", cases, bad)};
}

Outcome expansion_identity() {
  SeededRng rng(kSeed + 1);
  std::size_t cases = 0, bad = 0, literal = 0;
  const auto shifts = iota_from(0, 50);
  for (int inst = 0; inst < 100; ++inst) {
    const auto n_limit = static_cast<natural>(rng.integer(10, 200));
    const auto f = random_table(rng, n_limit);
    const auto gp = random_transform(rng, n_limit, n_limit);
    const auto e = finite_expansion(gp, n_limit);
    const auto truncated = truncated_profile(f, gp, n_limit, shifts);
    const auto expanded = expansion_profile(f, e, n_limit, shifts);
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      ++cases;
      bad += truncated.values[i] != expanded.values[i];
    }
    // Single-shift reference on a couple of seeded shifts.
    for (int k = 0; k < 2; ++k) {
      const auto a = static_cast<natural>(rng.integer(0, 50));
      ++literal;
      bad += correlate_via_expansion(f, e, n_limit, a) != correlate_truncated(f, gp, n_limit, a);
    }
  }
  return {bad == 0, fmt::format("100 instances, {} shift checks + {} single-shift checks, {} mismatches", cases,
                                literal, bad)};
}

Outcome truncation_bound() {
  SeededRng rng(kSeed + 2);
  std::size_t bad_route = 0, bad_bound = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const auto n_limit = static_cast<natural>(rng.integer(5, 200));
    const auto a = static_cast<natural>(rng.integer(1, 50));
    const auto f = random_table(rng, n_limit);
    const auto gp = random_transform(rng, n_limit + a, n_limit + a);
    const auto t = truncation_error(f, gp, n_limit, a);
    bad_route += !t.routes_agree;
    bad_bound += !t.holds;
  }
  return {bad_route == 0 && bad_bound == 0,
          fmt::format("100 instances, {} route mismatches, {} bound violations", bad_route, bad_bound)};
}

Outcome exhaustive_lemmas() {
  const auto& s = sieve();
  std::size_t bad = 0, cases = 0;
  for (natural q = 1; q <= 100; ++q) {
    for (natural m = 1; m <= 1000; ++m) {
      ++cases;
      bad += divisibility_indicator(q, m) != Rational(m % q == 0 ? 1 : 0);
    }
  }
  for (natural d = 1; d <= 2000; ++d) {
    for (natural n = 1; n <= 200; ++n) {
      ++cases;
      bad += !delange_bound_check(s, d, n).holds;
    }
  }
  for (natural q = 1; q <= 200; ++q) {
    for (natural n = 1; n <= 200; ++n) {
      ++cases;
      bad += static_cast<natural>(std::llabs(ramanujan_sum(s, q, static_cast<std::int64_t>(n)))) > std::gcd(q, n);
    }
  }
  for (natural q = 1; q <= 12; ++q) {
    for (natural l = 1; l <= 12; ++l) {
      for (natural n = 1; n <= 50; ++n) {
        ++cases;
        const Rational expected = q == l ? Rational(ramanujan_sum(q, static_cast<std::int64_t>(n))) : Rational(0);
        bad += orthogonality_average(q, l, n) != expected;
      }
    }
  }
  return {bad == 0, fmt::format("{} cases, {} violations", cases, bad)};
}

Outcome carmichael() {
  SeededRng rng(kSeed + 3);
  const std::vector<natural> support{1, 2, 3, 5, 6, 10, 15, 30};
  std::size_t bad = 0, cases = 0;
  for (int inst = 0; inst < 5; ++inst) {
    const auto f = random_table(rng, 60);
    const auto gp = random_transform_on(rng, 30, support);
    const auto coeffs = reef_coefficients(f, finite_expansion(gp, 30), 60);
    for (natural l = 1; l <= 30; ++l) {
      ++cases;
      bad += carmichael_coefficient_exact(f, gp, 60, l) != coeffs.at(l);
    }
    for (natural l : {7, 11, 14}) {
      ++cases;
      bad += !is_zero(carmichael_coefficient_exact(f, gp, 60, l)) || !is_zero(coeffs.at(l));
    }
  }
  return {bad == 0, fmt::format("{} coefficients, {} mismatches", cases, bad)};
}

Outcome reef_even() {
  SeededRng rng(kSeed + 4);
  std::size_t cases = 0;
  bool ok = true;
  // f = 1, g' on the divisors of 30, N = 60.
  {
    const auto one = tabulate<Rational>(60, [](natural) { return Rational(1); });
    const auto gp = random_transform_on(rng, 30, {1, 2, 3, 5, 6, 10, 15, 30});
    const auto res = reef_residual(one, gp, 60, iota_from(1, 60));
    ok = ok && res.zero();
    cases += res.rows.size();
  }
  // f = c_4, g' on {1, 2, 4}, N = 16.
  {
    const auto c4 = tabulate<Rational>(16, [](natural n) { return Rational(ramanujan_sum(4, static_cast<std::int64_t>(n))); });
    const auto gp = random_transform_on(rng, 4, {1, 2, 4});
    const auto res = reef_residual(c4, gp, 16, iota_from(1, 8));
    ok = ok && res.zero();
    cases += res.rows.size();
  }
  return {ok, fmt::format("{} shifts, residual {}", cases, ok ? "identically 0" : "nonzero")};
}

Outcome singular() {
  const auto& s = sieve();
  double worst_product = 0.0, worst_ratio = 0.0;
  const auto base = singular_series(s, 2, 100'000);
  for (natural k = 1; k <= 8; ++k) {
    const auto v = singular_series(s, 2 * k, 100'000);
    worst_product = std::max(worst_product, std::fabs(v.partial - v.product_oracle));
    // Odd-prime factor from trial division, independent of the sieve.
    double factor = 1.0;
    for (const auto& pp : factorize(k))
      if (pp.prime > 2) factor *= static_cast<double>(pp.prime - 1) / static_cast<double>(pp.prime - 2);
    worst_ratio = std::max(worst_ratio, std::fabs(v.partial / base.partial - factor));
  }
  // The product oracle itself against the known twin-prime constant.
  const double c2_gap = std::fabs(base.product_oracle / 2.0 - pins::kTwinPrimeConstant);
  const bool ok = worst_product <= kSingularVsProduct && worst_ratio <= kRatioLaw && c2_gap <= 1e-5;
  return {ok, fmt::format("max |partial - product| = {:.3e}, max ratio-law error = {:.3e}, product vs C2 {:.3e}",
                          worst_product, worst_ratio, c2_gap)};
}

Outcome hardy_littlewood() {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto r = hl_report(sieve(), 1'000'000, 1, 8, 100'000);
  omp_set_num_threads(saved);
  double lo = 2.0, hi = 0.0;
  bool pins_ok = true;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    lo = std::min(lo, r.rows[i].ratio);
    hi = std::max(hi, r.rows[i].ratio);
    pins_ok = pins_ok && rel_close(r.rows[i].correlation, pins::kHlCorrelation1e6[i].correlation, kPinRelative);
  }
  const bool ok = r.rows.size() == 8 && lo >= kHlLow && hi <= kHlHigh;
  return {ok, fmt::format("ratios in [{:.5f}, {:.5f}], correlation pins {}", lo, hi, pins_ok ? "match" : "differ")};
}

Outcome lambda_hat() {
  double worst = 0.0;
  for (const auto& p : pins::kLambdaHat) {
    const double v = lambda_coefficient(sieve(), p.n_limit, p.q).value;
    worst = std::max(worst, std::fabs(v - p.value) / std::fabs(p.value));
  }
  const double dist = std::fabs(lambda_coefficient(sieve(), 100'000, 1).value - 1.0);
  const bool ok = worst <= kPinRelative && dist <= pins::kLambdaHatQ1Distance * (1.0 + kPinRelative);
  return {ok, fmt::format("max relative deviation {:.3e}, |value(1e5, 1) - 1| = {}", worst, format_real(dist))};
}

Outcome pnt() {
  const auto c = chebyshev_pnt_check(sieve(), 1'000'000);
  const bool ok = c.theta_ratio >= kPntLow && c.theta_ratio <= kPntHigh &&
                  rel_close(c.theta_ratio, pins::kPsiRatio1e6, kPinRelative);
  return {ok, fmt::format("psi(1e6)/1e6 = {}", format_real(c.theta_ratio))};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "reefkit_acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "[run]\nseed = 424242\n";
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--suite", "identities"},
      {"twins", "--N", "100000", "--k", "1..8", "--l-max", "10000"},
      {"correlate", "--f", "mu", "--g", "phi_over_n", "--N", "300", "--shifts", "1..40", "--method", "expansion"},
      {"correlate", "--f", "lambda", "--g", "lambda", "--N", "5000", "--shifts", "1..20", "--truncate", "100"},
  };
  std::size_t files = 0;
  bool same = true;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string first_csv, first_json;
    for (int rep = 0; rep < 2; ++rep) {
      const auto csv = dir / fmt::format("c{}_{}.csv", c, rep);
      const auto json = dir / fmt::format("c{}_{}.json", c, rep);
      std::vector<std::string> args{"--config", cfg.string(), "--out", csv.string(), "--json", json.string()};
      args.insert(args.end(), commands[c].begin(), commands[c].end());
      std::ostringstream out, err;
      if (cli::run_command(args, out, err) != 0) return {false, "command failed: " + err.str()};
      if (rep == 0) {
        first_csv = slurp(csv);
        first_json = slurp(json);
      } else {
        same = same && first_csv == slurp(csv) && first_json == slurp(json) && !first_csv.empty();
      }
      files += 2;
    }
  }
  std::filesystem::remove_all(dir);
  return {same, fmt::format("{} report files from {} commands, {}", files, commands.size(),
                            same ? "byte-identical" : "differences found")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "finite expansion exactness", 5, fre_exactness},
      {2, "truncated correlation equals expansion", 10, expansion_identity},
      {3, "truncation tail identity and bound", 0, truncation_bound},
      {4, "indicator, Delange, gcd and orthogonality lemmas", 30, exhaustive_lemmas},
      {5, "Carmichael closed form", 20, carmichael},
      {6, "explicit formula on even instances", 0, reef_even},
      {7, "singular series vs Euler product", 10, singular},
      {8, "Hardy-Littlewood ratios at N=1e6 (1 thread)", 60, hardy_littlewood},
      {9, "Lambda-hat coefficient pins", 0, lambda_hat},
      {10, "Chebyshev psi(N)/N band", 0, pnt},
      {11, "deterministic report files", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::string timing = fmt::format("{:.2f}s", secs);
    if (c.limit_seconds > 0) timing += fmt::format(" < {:g}s{}", c.limit_seconds, in_time ? "" : " EXCEEDED");
    fmt::print("[{}] {:>2}. {}: {} ({})\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail, timing);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
