#include <doctest.h>

#include <cmath>
#include <numeric>

#include "reefkit/error.hpp"
#include "reefkit/instances.hpp"
#include "reefkit/reef.hpp"

using namespace reefkit;

namespace {

std::vector<natural> iota_shifts(natural lo, natural hi) {
  std::vector<natural> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

TabulatedFunction<Rational> ones(natural limit) {
  return tabulate<Rational>(limit, [](natural) { return Rational(1); }, "one");
}

TabulatedFunction<Rational> c_table(natural r, natural limit) {
  return tabulate<Rational>(limit, [r](natural n) { return Rational(ramanujan_sum(r, static_cast<std::int64_t>(n))); });
}

}  // namespace

TEST_SUITE("reef") {

TEST_CASE("coefficients of simple instances") {
  SeededRng rng(1);
  const auto f = random_table(rng, 24);
  EratosthenesTransform<Rational> unit(24);
  unit[1] = 1;
  const auto r = reef_coefficients(f, finite_expansion(unit, 24), 24);
  Rational total(0);
  for (natural n = 1; n <= 24; ++n) total += f[n];
  CHECK(r.at(1) == total);
  for (natural l = 2; l <= 24; ++l) REQUIRE(is_zero(r.at(l)));
  for (natural a = 1; a <= 10; ++a) CHECK(reef_evaluate(r, a) == total);

  // f = 1, N a multiple of lcm(1..4), g' on q <= 4.
  const auto gp = random_transform_on(rng, 12, {1, 2, 3, 4});
  const auto e = finite_expansion(gp, 4);
  const auto r1 = reef_coefficients(ones(12), e, 12);
  CHECK(r1.at(1) == e.coefficient(1) * 12);
  for (natural l = 2; l <= 12; ++l) REQUIRE(is_zero(r1.at(l)));
  for (natural a = 1; a <= 24; ++a) REQUIRE(reef_evaluate(r1, a) == correlate_truncated(ones(12), gp, 12, a));

  // f = c_4 with g' = 4 at q = 4.
  EratosthenesTransform<Rational> four(16);
  four[4] = 4;
  const auto c4 = c_table(4, 16);
  const auto r4 = reef_coefficients(c4, finite_expansion(four, 4), 16);
  CHECK(r4.at(4) == 16);
  for (natural a = 1; a <= 8; ++a) {
    REQUIRE(reef_evaluate(r4, a) == Rational(16 * ramanujan_sum(4, static_cast<std::int64_t>(a))));
    REQUIRE(reef_evaluate(r4, a) == correlate_truncated(c4, four, 16, a));
  }
  CHECK_THROWS_AS(reef_coefficients(f, finite_expansion(unit, 24), 20), InvalidInput);
}

TEST_CASE("serial and parallel coefficients agree") {
  SeededRng rng(2);
  for (int rep = 0; rep < 4; ++rep) {
    const auto f = random_table(rng, 80);
    const auto gp = random_transform(rng, 80, 80);
    const auto e = finite_expansion(gp, 80);
    const auto a = reef_coefficients(f, e, 80);
    const auto b = serial::reef_coefficients(f, e, 80);
    REQUIRE(a.coefficients == b.coefficients);
    for (natural l = 1; l <= 80; l += 9) REQUIRE(a.at(l) == reef_coefficient(f, e, 80, l));
  }
}

TEST_CASE("residual vanishes on even instances") {
  SeededRng rng(3);
  EratosthenesTransform<Rational> unit(30);
  unit[1] = 1;
  const auto any = random_table(rng, 30);
  CHECK(reef_residual(any, unit, 30, iota_shifts(1, 20)).zero());

  const auto gp = random_transform_on(rng, 6, {1, 2, 3, 6});
  const auto even = reef_residual(ones(60), gp, 60, iota_shifts(1, 120));
  CHECK(even.zero());

  for (natural r : {1, 2, 3, 4, 6, 12}) {
    auto g12 = random_transform_on(rng, 12, divisors(build_sieve(12), 12));
    const auto res = reef_residual(c_table(r, 24), g12, 24, iota_shifts(1, 24));
    REQUIRE(res.zero());
  }
}

TEST_CASE("asymmetric instance reports a nonzero residual") {
  TabulatedFunction<Rational> spike(9);
  spike[4] = 1;
  EratosthenesTransform<Rational> three(9);
  three[3] = 1;
  const auto res = reef_residual(spike, three, 9, iota_shifts(1, 6));
  CHECK_FALSE(res.zero());
  CHECK(res.rows.size() == 6);
}

TEST_CASE("theorem decomposition") {
  SeededRng rng(4);
  const auto f = random_table(rng, 20);
  const auto gp = random_transform(rng, 35, 35);
  const auto g = inverse_transform(gp, 35);
  for (natural a = 1; a <= 15; ++a) {
    const auto d = theorem_decomposition(f, g, gp, 20, a);
    REQUIRE(d.correlation - d.truncated == d.tail_sum);
    REQUIRE(d.error_term == d.tail_sum + d.reef_residual);
    REQUIRE(abs_value(d.tail_sum) <= d.tail_bound);
    REQUIRE(d.tail_sum == truncation_error(f, gp, 20, a).tail_sum);
  }

  // g already truncated at N and the instance is even.
  const auto g6 = random_transform_on(rng, 6, {1, 2, 3, 6});
  const auto gt = inverse_transform(g6, 80);
  for (natural a = 1; a <= 12; ++a) {
    const auto d = theorem_decomposition(ones(60), gt, g6, 60, a);
    REQUIRE(is_zero(d.error_term));
  }

  const auto sieve = build_sieve(1002);
  const auto lam = tabulate<double>(1002, [&](natural n) { return sieve.lambda(n); });
  const auto lp = eratosthenes_transform(sieve, lam);
  const auto dl = theorem_decomposition(lam, lam, lp, 1000, 2);
  CHECK(std::isfinite(dl.main));
  CHECK(std::fabs(dl.correlation - dl.truncated - dl.tail_sum) < 1e-6);
}

TEST_CASE("singular sum") {
  EratosthenesTransform<Rational> unit(4);
  unit[1] = 1;
  const auto e1 = finite_expansion(unit, 4);
  for (natural a = 1; a <= 6; ++a) CHECK(singular_sum(e1, e1, 100, a) == 1);

  FiniteExpansion<Rational> c2;
  c2.range_q = 2;
  c2.coefficients = {0, 0, 1};
  for (natural a = 1; a <= 6; ++a) CHECK(singular_sum(c2, c2, 100, a) == Rational(a % 2 == 0 ? 1 : -1));

  SeededRng rng(5);
  const auto gp = random_transform_on(rng, 6, {1, 2, 3, 6});
  const auto e = finite_expansion(gp, 6);
  for (natural a = 1; a <= 12; ++a) REQUIRE(singular_sum(e, e, 100, a) == singular_sum(e, e, 100, a + 6));
}

TEST_CASE("corollary check") {
  EratosthenesTransform<Rational> unit(2);
  unit[1] = 1;
  const auto trivial = corollary_check(unit, unit, 100, 0.25, {1, 2, 3});
  for (const auto& row : trivial.rows) {
    CHECK(row.correlation == 100);
    CHECK(row.prediction == 100);
    CHECK(row.normalized_remainder == 0.0);
  }

  EratosthenesTransform<Rational> fp(2), gp(2);
  fp[1] = 1;
  fp[2] = make_rational(-1, 2);
  gp[1] = make_rational(2, 3);
  gp[2] = make_rational(3, 4);
  const auto rep = corollary_check(fp, gp, 10'000, 0.25, {1, 2, 3, 5000});
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].correlation == 8750);
  CHECK(rep.rows[0].prediction == make_rational(7, 8) * 10'000);
  CHECK(rep.rows[1].correlation == 6875);
  CHECK(rep.rows[1].prediction == make_rational(11, 16) * 10'000);
  CHECK(rep.rows[2].correlation == 8750);
  CHECK(rep.rows[0].normalized_remainder == 0.0);
  CHECK_FALSE(rep.rows[2].tail_regime);
  CHECK(rep.rows[3].tail_regime);

  EratosthenesTransform<Rational> wide(200);
  wide[200] = 1;
  CHECK_THROWS_AS(corollary_check(wide, gp, 1000, 0.25, {1}), InvalidInput);
}

}  // TEST_SUITE
