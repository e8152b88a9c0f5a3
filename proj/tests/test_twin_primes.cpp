#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pinned_values.hpp"
#include "reefkit/error.hpp"
#include "reefkit/twin_primes.hpp"

using namespace reefkit;

namespace {

const SieveTables& big_sieve() {
  static const SieveTables s = build_sieve(1'000'016);
  return s;
}

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }

double odd_prime_factor(natural a) {
  double r = 1.0;
  for (natural p = 3; p <= a; p += 2) {
    bool prime = true;
    for (natural d = 3; d * d <= p; d += 2) prime = prime && p % d != 0;
    if (prime && a % p == 0) r *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  }
  return r;
}

}  // namespace

TEST_SUITE("twin_primes") {

TEST_CASE("lambda coefficients") {
  const auto& s = big_sieve();
  const auto single = lambda_coefficient(s, 30, 30);
  CHECK(single.value == doctest::Approx(s.mu(30) * -std::log(30.0) / 30.0));
  for (const auto& pin : pins::kLambdaHat) {
    const auto c = lambda_coefficient(s, pin.n_limit, pin.q);
    REQUIRE(rel_close(c.value, pin.value, 1e-9));
  }
  const auto q1 = lambda_coefficient(s, 100'000, 1);
  CHECK(std::fabs(q1.value - 1.0) <= pins::kLambdaHatQ1Distance * (1 + 1e-9));
  CHECK(lambda_coefficient(s, 1000, 4).reference == 0.0);
  CHECK_THROWS_AS(lambda_coefficient(s, 10, 11), InvalidInput);

  const auto table = coefficient_table(s, 100'000, 30);
  REQUIRE(table.size() == 30);
  CHECK(table[1].reference == -1.0);
  CHECK(table[5].reference == doctest::Approx(0.5));
  CHECK_THROWS_AS(coefficient_table(s, 100, 11), InvalidInput);
}

TEST_CASE("singular series") {
  const auto& s = big_sieve();
  CHECK(singular_series(s, 2, 1).partial == 1.0);
  CHECK(singular_series(s, 2, 2).partial == 2.0);
  const auto v = singular_series(s, 2, 100'000);
  CHECK(std::fabs(v.partial - v.product_oracle) <= 1e-3);
  CHECK(rel_close(v.partial, pins::kSingularPartial1e5[0].partial, 1e-9));
  CHECK(std::isfinite(v.tail_estimate));
  CHECK_THROWS_AS(singular_series(s, 3, 100), InvalidInput);
  CHECK_THROWS_AS(singular_series(s, 2, 200'000), InvalidInput);
  CHECK(twin_prime_product(s) == doctest::Approx(pins::kTwinPrimeConstant).epsilon(1e-5));

  const double base = serial::singular_series_partial(s, 2, 100'000);
  for (const auto& pin : pins::kSingularPartial1e5) {
    const double par = singular_series_partial(s, pin.shift, 100'000);
    const double ser = serial::singular_series_partial(s, pin.shift, 100'000);
    REQUIRE(rel_close(par, pin.partial, 1e-9));
    REQUIRE(rel_close(ser, pin.partial, 1e-9));
    REQUIRE(std::fabs(ser / base - odd_prime_factor(pin.shift)) <= 1e-6);
  }
}

TEST_CASE("Hardy-Littlewood correlations") {
  const auto& s = big_sieve();
  CHECK(serial::hl_correlation(s, 10, 2) == doctest::Approx(pins::kHlCorrelationN10Shift2).epsilon(1e-14));
  CHECK(hl_correlation(s, 1, 2) == 0.0);
  for (const auto& pin : pins::kHlCorrelation1e6) {
    const double par = hl_correlation(s, 1'000'000, pin.shift);
    const double ser = serial::hl_correlation(s, 1'000'000, pin.shift);
    REQUIRE(rel_close(par, pin.correlation, 1e-9));
    REQUIRE(rel_close(ser, pin.correlation, 1e-9));
    double reversed = 0.0;
    for (natural n = 1'000'000; n >= 1; --n) reversed += s.lambda(n) * s.lambda(n + pin.shift);
    REQUIRE(rel_close(reversed, ser, 1e-6));
  }
  CHECK_THROWS_AS(hl_correlation(s, 1'000'010, 16), InvalidInput);
}

TEST_CASE("HL report") {
  const auto& s = big_sieve();
  const auto r = hl_report(s, 1'000'000, 1, 8, 100'000);
  REQUIRE(r.rows.size() == 8);
  for (const auto& row : r.rows) {
    CHECK(row.ratio >= 0.9);
    CHECK(row.ratio <= 1.1);
    CHECK(row.prediction == doctest::Approx(row.singular * 1e6));
  }
  CHECK(r.warnings.empty());
  const auto small = hl_report(s, 1000, 1, 200, 1000, 0.25);
  CHECK_FALSE(small.warnings.empty());
  CHECK_THROWS_AS(hl_report(s, 1000, 2, 1, 1000), InvalidInput);
}

TEST_CASE("Chebyshev check") {
  const auto& s = big_sieve();
  const auto big = chebyshev_pnt_check(s, 1'000'000);
  CHECK(big.theta_ratio >= 0.99);
  CHECK(big.theta_ratio <= 1.01);
  CHECK(rel_close(big.theta_ratio, pins::kPsiRatio1e6, 1e-9));
  const auto mid = chebyshev_pnt_check(s, 10'000);
  CHECK(mid.theta_ratio >= 0.95);
  CHECK(mid.theta_ratio <= 1.05);
  CHECK(rel_close(mid.theta_ratio, pins::kPsiRatio1e4, 1e-9));
  const auto tiny = chebyshev_pnt_check(s, 10);
  CHECK_FALSE(tiny.within_band.has_value());
}

TEST_CASE("gcd tail sums") {
  const auto t16 = gcd_tail_sums(2, 16);
  CHECK(t16.low == doctest::Approx(1.0 + 2.0 / 4 + 1.0 / 9 + 2.0 / 16).epsilon(1e-14));
  CHECK(rel_close(t16.low, pins::kGcdLowN16, 1e-12));
  CHECK(rel_close(t16.mid, pins::kGcdMidN16, 1e-9));
  CHECK(rel_close(t16.high, pins::kGcdHighN16, 1e-9));

  const auto t = gcd_tail_sums(2, 10'000);
  CHECK(rel_close(t.low, pins::kGcdLowN1e4, 1e-9));
  CHECK(rel_close(t.mid, pins::kGcdMidN1e4, 1e-9));
  CHECK(rel_close(t.high, pins::kGcdHighN1e4, 1e-9));
  CHECK(rel_close(gcd_tail_sums(6, 10'000).high, pins::kGcdHighN1e4Shift6, 1e-9));

  const auto wide = gcd_tail_sums(720720, 10'000);
  CHECK(std::isfinite(wide.high));
  CHECK(rel_close(wide.low, pins::kGcdLowN1e4Shift720720, 1e-9));
  CHECK(rel_close(wide.mid, pins::kGcdMidN1e4Shift720720, 1e-9));
  CHECK(rel_close(wide.mid_constant, pins::kGcdMidConstantN1e4Shift720720, 1e-9));
  CHECK_THROWS_AS(gcd_tail_sums(2, 3), InvalidInput);
}

}  // TEST_SUITE
