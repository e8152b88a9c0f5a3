#pragma once

// Sieve tables for the elementary multiplicative functions.
//
// Arrays are indexed 1..limit; slot 0 exists but is unused. Tables are
// immutable once built and may be shared across threads.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace reefkit {

using natural = std::uint64_t;

struct SieveBudget {
  /// Largest limit build_sieve accepts (about 18 bytes per entry).
  natural max_limit = 100'000'000;
};

class SieveTables {
 public:
  SieveTables() = default;

  natural limit() const { return limit_; }

  int mu(natural n) const { return mu_[check(n)]; }
  std::uint32_t phi(natural n) const { return phi_[check(n)]; }
  unsigned omega(natural n) const { return omega_[check(n)]; }
  double lambda(natural n) const { return lambda_[check(n)]; }
  std::uint32_t spf(natural n) const { return spf_[check(n)]; }

  bool is_prime(natural n) const { return n >= 2 && spf(n) == n; }

  /// Raw arrays (index 0 unused) for tight loops.
  const std::vector<std::int8_t>& mu_table() const { return mu_; }
  const std::vector<std::uint32_t>& phi_table() const { return phi_; }
  const std::vector<std::uint8_t>& omega_table() const { return omega_; }
  const std::vector<double>& lambda_table() const { return lambda_; }
  const std::vector<std::uint32_t>& spf_table() const { return spf_; }

  /// Distinct prime factors of n in ascending order.
  std::vector<natural> prime_factors(natural n) const;

  friend SieveTables build_sieve(natural limit, SieveBudget budget);
  friend std::optional<SieveTables> load_sieve_cache(const std::filesystem::path& path, natural limit);

 private:
  natural check(natural n) const;

  natural limit_ = 0;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint8_t> omega_;
  std::vector<double> lambda_;
  std::vector<std::uint32_t> spf_;
};

/// Linear sieve over 1..limit. Throws InvalidInput for limit 0 and
/// BudgetExceeded past budget.max_limit.
SieveTables build_sieve(natural limit, SieveBudget budget = {});

/// Divisors of n ascending, from the spf factorization. n must be in range.
std::vector<natural> divisors(const SieveTables& sieve, natural n);

/// log p if n = p^k, else 0.
double von_mangoldt(const SieveTables& sieve, natural n);

// Table-free helpers (trial division), for moduli beyond any sieve.
struct PrimePower {
  natural prime;
  unsigned exponent;
};
std::vector<PrimePower> factorize(natural n);
natural euler_phi(natural n);
int mobius(natural n);
unsigned omega(natural n);

// Sieve cache file: little-endian, magic "REEFSIEV", u32 version, u64 limit,
// then for n = 1..limit: mu as i8, phi as u32, omega as u8, spf as u32,
// lambda as f64 (each array stored contiguously in that order).
inline constexpr std::uint32_t kSieveCacheVersion = 1;

void save_sieve_cache(const std::filesystem::path& path, const SieveTables& sieve);

/// nullopt when the file is absent, malformed, or has another version/limit.
std::optional<SieveTables> load_sieve_cache(const std::filesystem::path& path, natural limit);

/// Loads the cache if it matches, otherwise builds and rewrites it.
SieveTables load_or_build_sieve(const std::filesystem::path& path, natural limit, SieveBudget budget = {});

}  // namespace reefkit
