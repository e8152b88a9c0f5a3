#pragma once

// Seeded random rational instances for identity checks. The generator is
// std::mt19937_64, whose output sequence is fixed by the standard, and draws
// are mapped by plain modular reduction so the instances are identical on
// every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "reefkit/transforms.hpp"

namespace reefkit {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return engine_() % den < num; }

  /// p/q with |p| <= max_num, 1 <= q <= max_den.
  Rational rational(std::int64_t max_num = 9, std::int64_t max_den = 9) {
    const std::int64_t p = integer(-max_num, max_num);
    const std::int64_t q = integer(1, max_den);
    return make_rational(p, q);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random rationals on 1..limit; each entry nonzero with probability density.
inline TabulatedFunction<Rational> random_table(SeededRng& rng, natural limit, std::uint64_t density_percent = 100,
                                                std::string label = "random") {
  TabulatedFunction<Rational> f(limit, std::move(label));
  for (natural n = 1; n <= limit; ++n) {
    if (rng.chance(density_percent, 100)) f[n] = rng.rational();
  }
  return f;
}

/// Random g' on 1..limit, supported in q <= support_max.
inline EratosthenesTransform<Rational> random_transform(SeededRng& rng, natural limit, natural support_max,
                                                        std::uint64_t density_percent = 50) {
  EratosthenesTransform<Rational> g(limit);
  for (natural q = 1; q <= std::min(limit, support_max); ++q) {
    if (rng.chance(density_percent, 100)) g[q] = rng.rational();
  }
  return g;
}

/// Random g' on the given support (every listed q gets a value).
inline EratosthenesTransform<Rational> random_transform_on(SeededRng& rng, natural limit,
                                                           const std::vector<natural>& support) {
  EratosthenesTransform<Rational> g(limit);
  for (natural q : support) {
    Rational v;
    do v = rng.rational(); while (is_zero(v));
    g[q] = v;
  }
  return g;
}

}  // namespace reefkit
