#pragma once

// Correlations C_{f,g}(N, a) = sum_{n <= N} f(n) g(n + a), their truncated
// and Ramanujan-expanded forms, the shift transform C' and Carmichael
// coefficients.
//
// The shift enters only through n + a: f, g' and their supports are fixed
// objects, so every correlation built here is fair by construction.

#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "reefkit/kernels.hpp"
#include "reefkit/transforms.hpp"

namespace reefkit {

enum class CorrelationMethod { direct, truncated, expansion };

inline std::string_view to_string(CorrelationMethod m) {
  switch (m) {
    case CorrelationMethod::direct: return "direct";
    case CorrelationMethod::truncated: return "truncated";
    case CorrelationMethod::expansion: return "expansion";
  }
  return "direct";
}

template <Scalar T>
struct CorrelationProfile {
  natural n_limit = 0;
  std::vector<natural> shifts;
  std::vector<T> values;
  CorrelationMethod method = CorrelationMethod::direct;
};

template <Scalar T>
T correlate(const TabulatedFunction<T>& f, const TabulatedFunction<T>& g, natural n_limit, natural a) {
  if (f.limit() < n_limit || g.limit() < n_limit + a) {
    throw InvalidInput("correlate: insufficient tabulation range (need f on 1.." + std::to_string(n_limit) +
                       ", g on 1.." + std::to_string(n_limit + a) + ")");
  }
  T s(0);
  for (natural n = 1; n <= n_limit; ++n) {
    if (is_zero(f[n])) continue;
    s += f[n] * g[n + a];
  }
  return s;
}

/// C_{f, g_N}(N, a) with g_N the divisor sum of g' cut at q <= N.
template <Scalar T>
T correlate_truncated(const TabulatedFunction<T>& f, const EratosthenesTransform<T>& gprime, natural n_limit,
                      natural a) {
  if (gprime.limit() < n_limit) throw InvalidInput("correlate_truncated: g' must cover q <= N");
  return correlate(f, truncate(gprime, n_limit, n_limit + a), n_limit, a);
}

/// sum_{q <= Q} ghat(q) sum_{n <= N} f(n) c_q(n + a), term by term.
template <Scalar T>
T correlate_via_expansion(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit, natural a) {
  if (f.limit() < n_limit) throw InvalidInput("correlate_via_expansion: f table too short");
  T total(0);
  for (natural q = 1; q <= e.range_q; ++q) {
    if (is_zero(e.coefficients[q])) continue;
    T inner(0);
    for (natural n = 1; n <= n_limit; ++n) {
      if (is_zero(f[n])) continue;
      const std::int64_t c = ramanujan_sum(q, static_cast<std::int64_t>(n + a));
      if (c != 0) inner += f[n] * from_integer<T>(c);
    }
    total += e.coefficients[q] * inner;
  }
  return total;
}

template <Scalar T>
struct TruncationError {
  T actual{0};     // C_{f,g}(N,a) - C_{f,g_N}(N,a), from the two correlations
  T tail_sum{0};   // sum_{N<q<=N+a} g'(q) sum_{n<=N, n = -a mod q} f(n)
  T bound{0};      // max|f| * max_{N<q<=N+a}|g'(q)| * a
  bool routes_agree = false;
  bool holds = false;
};

template <Scalar T>
TruncationError<T> truncation_error(const TabulatedFunction<T>& f, const EratosthenesTransform<T>& gprime,
                                    natural n_limit, natural a) {
  if (gprime.limit() < n_limit + a) throw InvalidInput("truncation_error: g' must cover q <= N + a");
  if (f.limit() < n_limit) throw InvalidInput("truncation_error: f must cover n <= N");
  TruncationError<T> r;
  const auto g = inverse_transform(gprime, n_limit + a);
  r.actual = correlate(f, g, n_limit, a) - correlate_truncated(f, gprime, n_limit, a);

  T max_f(0), max_g(0);
  for (natural n = 1; n <= n_limit; ++n) {
    const T v = abs_value(f[n]);
    if (v > max_f) max_f = v;
  }
  for (natural q = n_limit + 1; q <= n_limit + a; ++q) {
    const T v = abs_value(gprime[q]);
    if (v > max_g) max_g = v;
    if (is_zero(gprime[q])) continue;
    // n = -a mod q with 1 <= n <= N: n = q - a mod q, stepping by q.
    const natural first = (q - a % q) % q == 0 ? q : (q - a % q) % q;
    T inner(0);
    for (natural n = first; n <= n_limit; n += q) inner += f[n];
    r.tail_sum += gprime[q] * inner;
  }
  r.bound = max_f * max_g * from_integer<T>(static_cast<std::int64_t>(a));
  r.routes_agree = r.actual == r.tail_sum;
  r.holds = abs_value(r.actual) <= r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// Profiles over many shifts. The parallel kernels precompute shift-independent
// tables once; the serial references call the single-shift operations above.

namespace serial {

template <Scalar T>
CorrelationProfile<T> truncated_profile(const TabulatedFunction<T>& f, const EratosthenesTransform<T>& gprime,
                                        natural n_limit, const std::vector<natural>& shifts) {
  CorrelationProfile<T> p{n_limit, shifts, std::vector<T>(shifts.size()), CorrelationMethod::truncated};
  for (std::size_t i = 0; i < shifts.size(); ++i) p.values[i] = correlate_truncated(f, gprime, n_limit, shifts[i]);
  return p;
}

template <Scalar T>
CorrelationProfile<T> expansion_profile(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit,
                                        const std::vector<natural>& shifts) {
  CorrelationProfile<T> p{n_limit, shifts, std::vector<T>(shifts.size()), CorrelationMethod::expansion};
  for (std::size_t i = 0; i < shifts.size(); ++i) p.values[i] = correlate_via_expansion(f, e, n_limit, shifts[i]);
  return p;
}

}  // namespace serial

template <Scalar T>
CorrelationProfile<T> direct_profile(const TabulatedFunction<T>& f, const TabulatedFunction<T>& g, natural n_limit,
                                     const std::vector<natural>& shifts) {
  CorrelationProfile<T> p{n_limit, shifts, std::vector<T>(shifts.size()), CorrelationMethod::direct};
  kernels::parallel_fill(p.values, [&](std::size_t i) { return correlate(f, g, n_limit, shifts[i]); });
  return p;
}

/// Truncated correlations with cutoff Q (default N). g' must cover q <= Q.
template <Scalar T>
CorrelationProfile<T> truncated_profile(const TabulatedFunction<T>& f, const EratosthenesTransform<T>& gprime,
                                        natural n_limit, const std::vector<natural>& shifts, natural cutoff = 0) {
  if (cutoff == 0) cutoff = n_limit;
  if (gprime.limit() < cutoff) throw InvalidInput("truncated_profile: g' must cover q <= cutoff");
  natural max_shift = 0;
  for (natural a : shifts) max_shift = std::max(max_shift, a);
  const auto g_cut = truncate(gprime, cutoff, n_limit + max_shift);
  CorrelationProfile<T> p{n_limit, shifts, std::vector<T>(shifts.size()), CorrelationMethod::truncated};
  kernels::parallel_fill(p.values, [&](std::size_t i) { return correlate(f, g_cut, n_limit, shifts[i]); });
  return p;
}

/// Residue-class form of the expansion. For each q with ghat(q) != 0 the sums
/// S_q(r) = sum_{n <= N, n = r mod q} f(n) are shift independent, so
/// sum_n f(n) c_q(n + a) = sum_{r mod q} S_q(r) c_q(r + a).
template <Scalar T>
class ExpansionKernel {
 public:
  ExpansionKernel(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit) : expansion_(e) {
    if (f.limit() < n_limit) throw InvalidInput("ExpansionKernel: f table too short");
    for (natural q = 1; q <= e.range_q; ++q) {
      if (is_zero(e.coefficients[q])) continue;
      Modulus m;
      m.q = q;
      m.period = ramanujan_period(q);
      m.residue_sums.assign(q, T(0));
      for (natural n = 1; n <= n_limit; ++n) {
        if (!is_zero(f[n])) m.residue_sums[n % q] += f[n];
      }
      moduli_.push_back(std::move(m));
    }
  }

  T operator()(natural a) const {
    T total(0);
    for (const auto& m : moduli_) {
      T inner(0);
      const natural shift = a % m.q;
      for (natural r = 0; r < m.q; ++r) {
        if (is_zero(m.residue_sums[r])) continue;
        const std::int64_t c = m.period[(r + shift) % m.q];
        if (c == 0) continue;
        if (c == 1) {
          inner += m.residue_sums[r];
        } else if (c == -1) {
          inner -= m.residue_sums[r];
        } else {
          inner += m.residue_sums[r] * from_integer<T>(c);
        }
      }
      total += expansion_.coefficients[m.q] * inner;
    }
    return total;
  }

 private:
  struct Modulus {
    natural q = 0;
    std::vector<std::int64_t> period;
    std::vector<T> residue_sums;
  };
  const FiniteExpansion<T>& expansion_;
  std::vector<Modulus> moduli_;
};

template <Scalar T>
CorrelationProfile<T> expansion_profile(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit,
                                        const std::vector<natural>& shifts) {
  const ExpansionKernel<T> kernel(f, e, n_limit);
  CorrelationProfile<T> p{n_limit, shifts, std::vector<T>(shifts.size()), CorrelationMethod::expansion};
  kernels::parallel_fill(p.values, [&](std::size_t i) { return kernel(shifts[i]); });
  return p;
}

// ---------------------------------------------------------------------------

template <Scalar T>
struct ShiftTransform {
  std::vector<T> values;  // C'(l) for l = 1..l_max, index 0 unused
  natural l_max() const { return values.empty() ? 0 : values.size() - 1; }
};

/// C'(l) = sum_{t | l} C(t) mu(l / t) for l <= l_max, with C(t) = values[t].
template <Scalar T>
ShiftTransform<T> shift_eratosthenes(const SieveTables& sieve, const std::vector<T>& values, natural l_max) {
  if (values.size() < l_max + 1) throw InvalidInput("shift_eratosthenes: C not evaluated on all t <= l_max");
  if (sieve.limit() < l_max) throw InvalidInput("shift_eratosthenes: sieve too small");
  ShiftTransform<T> out;
  out.values.assign(static_cast<std::size_t>(l_max) + 1, T(0));
  const auto& mu = sieve.mu_table();
  for (natural t = 1; t <= l_max; ++t) {
    if (is_zero(values[t])) continue;
    for (natural k = 1; t * k <= l_max; ++k) {
      if (mu[k] == 1) {
        out.values[t * k] += values[t];
      } else if (mu[k] == -1) {
        out.values[t * k] -= values[t];
      }
    }
  }
  return out;
}

/// sum_{t | l} C'(t), recovering C on 1..l_max.
template <Scalar T>
std::vector<T> shift_inverse(const ShiftTransform<T>& s) {
  std::vector<T> out(s.values.size(), T(0));
  for (natural t = 1; t <= s.l_max(); ++t) {
    if (is_zero(s.values[t])) continue;
    for (natural l = t; l <= s.l_max(); l += t) out[l] += s.values[t];
  }
  return out;
}

template <Scalar T>
struct DhPoint {
  natural d = 0;
  T partial{0};
  T increment{0};
};

/// Running partial sums of sum_d 2^omega(d) |C'_{f,g_N}(N, d)| / d. Report
/// only: a finite prefix says nothing definite about convergence.
template <Scalar T>
std::vector<DhPoint<T>> dh_diagnostic(const SieveTables& sieve, const TabulatedFunction<T>& f,
                                      const EratosthenesTransform<T>& gprime, natural n_limit, natural d_max) {
  std::vector<natural> shifts(d_max);
  std::iota(shifts.begin(), shifts.end(), natural{1});
  const auto profile = truncated_profile(f, gprime, n_limit, shifts);
  std::vector<T> c(static_cast<std::size_t>(d_max) + 1, T(0));
  for (natural t = 1; t <= d_max; ++t) c[t] = profile.values[t - 1];
  const auto cprime = shift_eratosthenes(sieve, c, d_max);
  std::vector<DhPoint<T>> out;
  out.reserve(d_max);
  T running(0);
  for (natural d = 1; d <= d_max; ++d) {
    T inc = abs_value(cprime.values[d]);
    inc *= from_integer<T>(std::int64_t{1} << sieve.omega(d));
    inc /= from_integer<T>(static_cast<std::int64_t>(d));
    running += inc;
    out.push_back({d, running, inc});
  }
  return out;
}

/// (1 / phi(l)) (1 / x) sum_{a <= x} C(a) c_l(a) at a finite x.
template <Scalar T, class ShiftFn>
T carmichael_coefficient_empirical(ShiftFn&& correlation, natural l, natural x) {
  if (l == 0 || x == 0) throw InvalidInput("carmichael_coefficient_empirical: l and x must be positive");
  const auto period = ramanujan_period(l);
  T s(0);
  for (natural a = 1; a <= x; ++a) {
    const std::int64_t c = period[a % l];
    if (c == 0) continue;
    s += T(correlation(a)) * from_integer<T>(c);
  }
  s /= from_integer<T>(static_cast<std::int64_t>(x));
  s /= from_integer<T>(static_cast<std::int64_t>(euler_phi(l)));
  return s;
}

/// Lcm of the support of g', or of the support together with l; throws
/// BudgetExceeded once it passes the budget.
inline natural support_period(const std::vector<natural>& support, natural l, natural lcm_budget) {
  natural p = l == 0 ? 1 : l;
  for (natural q : support) {
    p = std::lcm(p, q);
    if (p > lcm_budget) {
      throw BudgetExceeded("period of g' support exceeds lcm budget " + std::to_string(lcm_budget));
    }
  }
  if (p > lcm_budget) throw BudgetExceeded("period exceeds lcm budget " + std::to_string(lcm_budget));
  return p;
}

/// Exact Carmichael coefficient of a -> C_{f,g}(N, a) for g with sparse
/// support: the average of C(a) c_l(a) over one full period a = 1..L,
/// L = lcm(support, l), divided by phi(l).
template <Scalar T>
T carmichael_coefficient_exact(const TabulatedFunction<T>& f, const EratosthenesTransform<T>& gprime,
                               natural n_limit, natural l, natural lcm_budget = 1'000'000) {
  if (l == 0) throw InvalidInput("carmichael_coefficient_exact: l must be positive");
  if (f.limit() < n_limit) throw InvalidInput("carmichael_coefficient_exact: f table too short");
  const auto support = gprime.support();
  const natural g_period = support_period(support, 1, lcm_budget);
  const natural full_period = support_period(support, l, lcm_budget);

  // g on one period: g(r) = sum_{q in support, q | r}, r = 0 meaning every q.
  std::vector<T> g(g_period, T(0));
  for (natural q : support) {
    for (natural r = 0; r < g_period; r += q) g[r] += gprime[q];
  }
  // C(a) depends only on a mod g_period.
  std::vector<T> c(g_period, T(0));
  for (natural a = 0; a < g_period; ++a) {
    for (natural n = 1; n <= n_limit; ++n) {
      if (!is_zero(f[n])) c[a] += f[n] * g[(n + a) % g_period];
    }
  }
  const auto cl = ramanujan_period(l);
  T s(0);
  for (natural a = 1; a <= full_period; ++a) {
    const std::int64_t v = cl[a % l];
    if (v != 0) s += c[a % g_period] * from_integer<T>(v);
  }
  s /= from_integer<T>(static_cast<std::int64_t>(full_period));
  s /= from_integer<T>(static_cast<std::int64_t>(euler_phi(l)));
  return s;
}

}  // namespace reefkit
