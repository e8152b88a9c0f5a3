#pragma once

// Tabulated arithmetic functions, Eratosthenes transforms F' = F * mu,
// truncated divisor sums and finite Ramanujan expansions.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "reefkit/arith_core.hpp"
#include "reefkit/error.hpp"
#include "reefkit/ramanujan.hpp"
#include "reefkit/scalar.hpp"

namespace reefkit {

/// Values on 1..limit (slot 0 holds zero and is never read).
template <Scalar T>
class TabulatedFunction {
 public:
  using value_type = T;

  TabulatedFunction() = default;
  explicit TabulatedFunction(natural limit, std::string label = {})
      : values_(checked_size(limit), T(0)), label_(std::move(label)) {}

  static constexpr Mode mode() { return mode_of<T>(); }

  natural limit() const { return values_.empty() ? 0 : values_.size() - 1; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const T& operator[](natural n) const { return values_[n]; }
  T& operator[](natural n) { return values_[n]; }

  const T& at(natural n) const {
    if (n == 0 || n > limit()) {
      throw InvalidInput("insufficient tabulation range: " + label_ + " needs n=" + std::to_string(n) +
                         ", has 1.." + std::to_string(limit()));
    }
    return values_[n];
  }

  const std::vector<T>& raw() const { return values_; }

  friend bool operator==(const TabulatedFunction& a, const TabulatedFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  static std::size_t checked_size(natural limit) {
    if (limit == 0) throw InvalidInput("tabulated function needs limit >= 1");
    return static_cast<std::size_t>(limit) + 1;
  }

  std::vector<T> values_;
  std::string label_;
};

template <Scalar T, class Fn>
TabulatedFunction<T> tabulate(natural limit, Fn&& fn, std::string label = {}) {
  TabulatedFunction<T> f(limit, std::move(label));
  for (natural n = 1; n <= limit; ++n) f[n] = fn(n);
  return f;
}

/// F'(d) for d = 1..limit; treated as zero past the limit.
template <Scalar T>
class EratosthenesTransform {
 public:
  EratosthenesTransform() = default;
  explicit EratosthenesTransform(natural limit) : values_(static_cast<std::size_t>(limit) + 1, T(0)) {
    if (limit == 0) throw InvalidInput("transform needs limit >= 1");
  }

  /// Sparse construction from (d, F'(d)) pairs.
  static EratosthenesTransform from_support(natural limit, const std::vector<std::pair<natural, T>>& entries) {
    EratosthenesTransform t(limit);
    for (const auto& [d, v] : entries) {
      if (d == 0 || d > limit) throw InvalidInput("support index " + std::to_string(d) + " outside 1..limit");
      t.values_[d] = v;
    }
    return t;
  }

  static constexpr Mode mode() { return mode_of<T>(); }
  natural limit() const { return values_.empty() ? 0 : values_.size() - 1; }

  const T& operator[](natural d) const { return values_[d]; }
  T& operator[](natural d) { return values_[d]; }

  T value_or_zero(natural d) const { return d >= 1 && d <= limit() ? values_[d] : T(0); }

  /// Indices with F'(d) != 0, ascending.
  std::vector<natural> support() const {
    std::vector<natural> s;
    for (natural d = 1; d <= limit(); ++d)
      if (!is_zero(values_[d])) s.push_back(d);
    return s;
  }

  const std::vector<T>& raw() const { return values_; }

 private:
  std::vector<T> values_;
};

/// ghat(l) for l = 1..range_q; zero past the range.
template <Scalar T>
struct FiniteExpansion {
  natural range_q = 0;
  std::vector<T> coefficients;  // index 0 unused

  T coefficient(natural l) const { return l >= 1 && l <= range_q ? coefficients[l] : T(0); }
};

// ---------------------------------------------------------------------------

/// F'(d) = sum_{e | d} F(e) mu(d/e). The sieve must cover F's range.
template <Scalar T>
EratosthenesTransform<T> eratosthenes_transform(const SieveTables& sieve, const TabulatedFunction<T>& f) {
  const natural n = f.limit();
  if (sieve.limit() < n) throw InvalidInput("eratosthenes_transform: sieve smaller than table");
  EratosthenesTransform<T> out(n);
  const auto& mu = sieve.mu_table();
  for (natural e = 1; e <= n; ++e) {
    if (is_zero(f[e])) continue;
    for (natural k = 1; e * k <= n; ++k) {
      if (mu[k] == 1) {
        out[e * k] += f[e];
      } else if (mu[k] == -1) {
        out[e * k] -= f[e];
      }
    }
  }
  return out;
}

/// m -> sum_{q | m, q <= cutoff} g'(q), tabulated on 1..domain.
template <Scalar T>
TabulatedFunction<T> truncate(const EratosthenesTransform<T>& gprime, natural cutoff, natural domain) {
  if (cutoff > gprime.limit()) throw InvalidInput("truncate: cutoff beyond transform range");
  TabulatedFunction<T> g(domain);
  for (natural q = 1; q <= cutoff; ++q) {
    if (is_zero(gprime[q])) continue;
    for (natural m = q; m <= domain; m += q) g[m] += gprime[q];
  }
  return g;
}

/// F(n) = sum_{d | n} F'(d) on 1..domain, with F' zero past its limit.
template <Scalar T>
TabulatedFunction<T> inverse_transform(const EratosthenesTransform<T>& fprime, natural domain) {
  return truncate(fprime, std::min(fprime.limit(), domain), domain);
}

/// ghat(l) = sum_{q <= range_q, l | q} g'(q) / q.
template <Scalar T>
FiniteExpansion<T> finite_expansion(const EratosthenesTransform<T>& gprime, natural range_q) {
  if (range_q > gprime.limit()) throw InvalidInput("finite_expansion: range beyond transform");
  FiniteExpansion<T> e;
  e.range_q = range_q;
  e.coefficients.assign(static_cast<std::size_t>(range_q) + 1, T(0));
  for (natural q = 1; q <= range_q; ++q) {
    if (is_zero(gprime[q])) continue;
    T term = gprime[q];
    term /= from_integer<T>(static_cast<std::int64_t>(q));
    for (natural l = 1; l * l <= q; ++l) {
      if (q % l != 0) continue;
      e.coefficients[l] += term;
      if (l * l != q) e.coefficients[q / l] += term;
    }
  }
  return e;
}

/// sum_{l <= Q} ghat(l) c_l(m).
template <Scalar T>
T evaluate_expansion(const FiniteExpansion<T>& e, natural m) {
  if (m == 0) throw InvalidInput("evaluate_expansion: m must be positive");
  T s(0);
  for (natural l = 1; l <= e.range_q; ++l) {
    if (is_zero(e.coefficients[l])) continue;
    const std::int64_t c = ramanujan_sum(l, static_cast<std::int64_t>(m));
    if (c != 0) s += e.coefficients[l] * from_integer<T>(c);
  }
  return s;
}

template <Scalar T>
T evaluate_expansion(const SieveTables& sieve, const FiniteExpansion<T>& e, natural m) {
  if (m == 0) throw InvalidInput("evaluate_expansion: m must be positive");
  T s(0);
  for (natural l = 1; l <= e.range_q; ++l) {
    if (is_zero(e.coefficients[l])) continue;
    const std::int64_t c = ramanujan_sum(sieve, l, static_cast<std::int64_t>(m));
    if (c != 0) s += e.coefficients[l] * from_integer<T>(c);
  }
  return s;
}

/// Partial Wintner-Delange coefficient: sum_{d <= d_max, l | d} F'(d) / d.
template <Scalar T>
T wintner_delange_coefficient(const EratosthenesTransform<T>& fprime, natural l, natural d_max) {
  if (l == 0) throw InvalidInput("wintner_delange_coefficient: l must be positive");
  if (d_max > fprime.limit()) throw InvalidInput("wintner_delange_coefficient: d_max beyond transform");
  T s(0);
  for (natural d = l; d <= d_max; d += l) {
    if (is_zero(fprime[d])) continue;
    T term = fprime[d];
    term /= from_integer<T>(static_cast<std::int64_t>(d));
    s += term;
  }
  return s;
}

/// sum_{d <= d_max} 2^omega(d) |F'(d)| / d, the Delange Hypothesis series.
template <Scalar T>
T dh_partial_sum(const SieveTables& sieve, const EratosthenesTransform<T>& fprime, natural d_max) {
  if (d_max > fprime.limit()) throw InvalidInput("dh_partial_sum: d_max beyond transform");
  if (d_max > sieve.limit()) throw InvalidInput("dh_partial_sum: sieve too small");
  T s(0);
  for (natural d = 1; d <= d_max; ++d) {
    if (is_zero(fprime[d])) continue;
    T term = abs_value(fprime[d]);
    term *= from_integer<T>(std::int64_t{1} << sieve.omega(d));
    term /= from_integer<T>(static_cast<std::int64_t>(d));
    s += term;
  }
  return s;
}

/// max_{n <= limit} |f(n)| / n^eps: a finite-range view of the growth
/// hypothesis f(n) << n^eps. Reported, never asserted.
template <Scalar T>
double growth_diagnostic(const TabulatedFunction<T>& f, double eps) {
  double worst = 0.0;
  for (natural n = 1; n <= f.limit(); ++n) {
    worst = std::max(worst, std::fabs(to_double(f[n])) / std::pow(static_cast<double>(n), eps));
  }
  return worst;
}

struct Stabilization {
  bool stabilized = false;
  double last_difference = 0.0;
};

/// Whether the last successive difference of a partial-sum sequence is below
/// the threshold. Says nothing about the limit of the full series.
inline Stabilization stabilization(const std::vector<double>& partials, double threshold) {
  Stabilization s;
  if (partials.size() < 2) return s;
  s.last_difference = std::fabs(partials.back() - partials[partials.size() - 2]);
  s.stabilized = s.last_difference < threshold;
  return s;
}

}  // namespace reefkit
