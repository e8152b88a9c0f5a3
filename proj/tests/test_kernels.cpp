#include <doctest.h>

#include <cmath>
#include <omp.h>
#include <stdexcept>

#include "reefkit/kernels.hpp"

using namespace reefkit;

TEST_SUITE("kernels") {

TEST_CASE("blocked sum is independent of the thread count") {
  const auto term = [](natural n) { return 1.0 / static_cast<double>(n * n); };
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kernels::blocked_sum(1, 1'000'000, term);
  omp_set_num_threads(4);
  const double four = kernels::blocked_sum(1, 1'000'000, term);
  omp_set_num_threads(saved);
  CHECK(one == four);
  const double serial = serial::ascending_sum(1, 1'000'000, term);
  CHECK(std::fabs(one - serial) < 1e-12);
  CHECK(kernels::blocked_sum(5, 4, term) == 0.0);
  CHECK(serial::ascending_sum(5, 4, term) == 0.0);
  // A single block reproduces the ascending order exactly.
  CHECK(kernels::blocked_sum(1, kernels::kReductionBlock, term) == serial::ascending_sum(1, kernels::kReductionBlock, term));
}

TEST_CASE("parallel fill matches serial fill") {
  std::vector<long> a(10'000), b(10'000);
  const auto fn = [](std::size_t i) { return static_cast<long>(i * i % 97); };
  kernels::parallel_fill(a, fn);
  serial::fill(b, fn);
  CHECK(a == b);
}

TEST_CASE("parallel fill rethrows") {
  std::vector<int> v(1000);
  CHECK_THROWS_AS(kernels::parallel_fill(v,
                                         [](std::size_t i) -> int {
                                           if (i == 500) throw std::runtime_error("boom");
                                           return 0;
                                         }),
                  std::runtime_error);
}

}  // TEST_SUITE
