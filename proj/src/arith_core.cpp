#include "reefkit/arith_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "reefkit/error.hpp"

namespace reefkit {

natural SieveTables::check(natural n) const {
  if (n == 0 || n > limit_) {
    throw InvalidInput("argument " + std::to_string(n) + " outside sieve range 1.." + std::to_string(limit_));
  }
  return n;
}

std::vector<natural> SieveTables::prime_factors(natural n) const {
  check(n);
  std::vector<natural> out;
  while (n > 1) {
    natural p = spf_[n];
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  return out;
}

SieveTables build_sieve(natural limit, SieveBudget budget) {
  if (limit == 0) throw InvalidInput("sieve limit must be at least 1");
  if (limit > budget.max_limit || limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw BudgetExceeded("sieve limit " + std::to_string(limit) + " exceeds budget " +
                         std::to_string(budget.max_limit));
  }
  SieveTables t;
  t.limit_ = limit;
  const std::size_t size = limit + 1;
  t.mu_.assign(size, 0);
  t.phi_.assign(size, 0);
  t.omega_.assign(size, 0);
  t.lambda_.assign(size, 0.0);
  t.spf_.assign(size, 0);

  t.mu_[1] = 1;
  t.phi_[1] = 1;
  t.spf_[1] = 1;
  std::vector<std::uint32_t> primes;
  for (natural n = 2; n <= limit; ++n) {
    if (t.spf_[n] == 0) {
      t.spf_[n] = static_cast<std::uint32_t>(n);
      t.mu_[n] = -1;
      t.phi_[n] = static_cast<std::uint32_t>(n - 1);
      t.omega_[n] = 1;
      primes.push_back(static_cast<std::uint32_t>(n));
    }
    const std::uint32_t spf_n = t.spf_[n];
    for (std::uint32_t p : primes) {
      const natural m = n * p;
      if (p > spf_n || m > limit) break;
      t.spf_[m] = p;
      if (p == spf_n) {
        t.mu_[m] = 0;
        t.phi_[m] = t.phi_[n] * p;
        t.omega_[m] = t.omega_[n];
      } else {
        t.mu_[m] = static_cast<std::int8_t>(-t.mu_[n]);
        t.phi_[m] = t.phi_[n] * (p - 1);
        t.omega_[m] = static_cast<std::uint8_t>(t.omega_[n] + 1);
      }
    }
  }
  // n = p^k iff n/p is 1 or itself a power of p.
  for (natural n = 2; n <= limit; ++n) {
    const natural p = t.spf_[n];
    const natural m = n / p;
    if (m == 1) {
      t.lambda_[n] = std::log(static_cast<double>(p));
    } else if (t.spf_[m] == p && t.lambda_[m] != 0.0) {
      t.lambda_[n] = t.lambda_[m];
    }
  }
  return t;
}

std::vector<natural> divisors(const SieveTables& sieve, natural n) {
  if (n == 0 || n > sieve.limit()) throw InvalidInput("divisors: argument out of range");
  std::vector<natural> out{1};
  natural m = n;
  while (m > 1) {
    const natural p = sieve.spf(m);
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const std::size_t base = out.size();
    natural pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double von_mangoldt(const SieveTables& sieve, natural n) { return sieve.lambda(n); }

std::vector<PrimePower> factorize(natural n) {
  if (n == 0) throw InvalidInput("factorize: argument must be positive");
  std::vector<PrimePower> out;
  for (natural p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

natural euler_phi(natural n) {
  natural r = n;
  for (auto [p, e] : factorize(n)) r -= r / p;
  return r;
}

int mobius(natural n) {
  int m = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

unsigned omega(natural n) { return static_cast<unsigned>(factorize(n).size()); }

namespace {

constexpr std::array<char, 8> kMagic{'R', 'E', 'E', 'F', 'S', 'I', 'E', 'V'};

template <class U>
void put_le(std::ofstream& out, U v) {
  std::array<unsigned char, sizeof(U)> bytes{};
  using Bits = std::conditional_t<sizeof(U) == 8, std::uint64_t,
                                  std::conditional_t<sizeof(U) == 4, std::uint32_t, std::uint8_t>>;
  Bits b;
  std::memcpy(&b, &v, sizeof(U));
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>((b >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class U>
bool get_le(std::ifstream& in, U& v) {
  std::array<unsigned char, sizeof(U)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  using Bits = std::conditional_t<sizeof(U) == 8, std::uint64_t,
                                  std::conditional_t<sizeof(U) == 4, std::uint32_t, std::uint8_t>>;
  Bits b = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) b |= static_cast<Bits>(static_cast<Bits>(bytes[i]) << (8 * i));
  std::memcpy(&v, &b, sizeof(U));
  return true;
}

}  // namespace

void save_sieve_cache(const std::filesystem::path& path, const SieveTables& sieve) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write sieve cache " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_le(out, kSieveCacheVersion);
  put_le(out, static_cast<std::uint64_t>(sieve.limit()));
  const natural n = sieve.limit();
  for (natural i = 1; i <= n; ++i) put_le(out, sieve.mu_table()[i]);
  for (natural i = 1; i <= n; ++i) put_le(out, sieve.phi_table()[i]);
  for (natural i = 1; i <= n; ++i) put_le(out, sieve.omega_table()[i]);
  for (natural i = 1; i <= n; ++i) put_le(out, sieve.spf_table()[i]);
  for (natural i = 1; i <= n; ++i) put_le(out, sieve.lambda_table()[i]);
  if (!out) throw IoError("short write to sieve cache " + path.string());
}

std::optional<SieveTables> load_sieve_cache(const std::filesystem::path& path, natural limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) return std::nullopt;
  std::uint32_t version = 0;
  std::uint64_t stored = 0;
  if (!get_le(in, version) || version != kSieveCacheVersion) return std::nullopt;
  if (!get_le(in, stored) || stored != limit || limit == 0) return std::nullopt;

  SieveTables t;
  t.limit_ = limit;
  t.mu_.assign(limit + 1, 0);
  t.phi_.assign(limit + 1, 0);
  t.omega_.assign(limit + 1, 0);
  t.spf_.assign(limit + 1, 0);
  t.lambda_.assign(limit + 1, 0.0);
  for (natural i = 1; i <= limit; ++i)
    if (!get_le(in, t.mu_[i])) return std::nullopt;
  for (natural i = 1; i <= limit; ++i)
    if (!get_le(in, t.phi_[i])) return std::nullopt;
  for (natural i = 1; i <= limit; ++i)
    if (!get_le(in, t.omega_[i])) return std::nullopt;
  for (natural i = 1; i <= limit; ++i)
    if (!get_le(in, t.spf_[i])) return std::nullopt;
  for (natural i = 1; i <= limit; ++i)
    if (!get_le(in, t.lambda_[i])) return std::nullopt;
  char extra;
  if (in.read(&extra, 1)) return std::nullopt;
  return t;
}

SieveTables load_or_build_sieve(const std::filesystem::path& path, natural limit, SieveBudget budget) {
  if (auto cached = load_sieve_cache(path, limit)) return std::move(*cached);
  SieveTables t = build_sieve(limit, budget);
  save_sieve_cache(path, t);
  return t;
}

}  // namespace reefkit
