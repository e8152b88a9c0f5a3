#pragma once

// The exact explicit formula for truncated correlations,
//
//   C_{f,g_N}(N, a) = sum_{l <= N} (ghat(l) / phi(l)) (sum_{n <= N} f(n) c_l(n)) c_l(a),
//
// its residual against the direct sum, the structure-plus-error split of
// C_{f,g} and the singular sum sum_q fhat(q) ghat(q) c_q(a).
//
// The formula is a theorem only under extra hypotheses on g, so nothing here
// asserts it: residuals are reported, and tests assert zero residual only on
// instance classes where it provably holds.

#include <cmath>
#include <vector>

#include "reefkit/correlation.hpp"

namespace reefkit {

template <Scalar T>
struct ReefCoefficients {
  natural n_limit = 0;
  std::vector<T> coefficients;  // l = 1..n_limit, index 0 unused

  T at(natural l) const { return l >= 1 && l <= n_limit ? coefficients[l] : T(0); }
};

/// (ghat(l) / phi(l)) sum_{n <= N} f(n) c_l(n), zero wherever ghat(l) = 0.
template <Scalar T>
T reef_coefficient(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit, natural l) {
  const T ghat = e.coefficient(l);
  if (is_zero(ghat)) return T(0);
  const auto period = ramanujan_period(l);
  T inner(0);
  for (natural n = 1; n <= n_limit; ++n) {
    const std::int64_t c = period[n % l];
    if (c != 0 && !is_zero(f[n])) inner += f[n] * from_integer<T>(c);
  }
  T out = ghat * inner;
  out /= from_integer<T>(static_cast<std::int64_t>(euler_phi(l)));
  return out;
}

namespace serial {

template <Scalar T>
ReefCoefficients<T> reef_coefficients(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit) {
  if (e.range_q > n_limit) throw InvalidInput("reef_coefficients: expansion range exceeds N");
  if (f.limit() < n_limit) throw InvalidInput("reef_coefficients: f table too short");
  ReefCoefficients<T> r{n_limit, std::vector<T>(static_cast<std::size_t>(n_limit) + 1, T(0))};
  for (natural l = 1; l <= n_limit; ++l) {
    const T ghat = e.coefficient(l);
    if (is_zero(ghat)) continue;
    T inner(0);
    for (natural n = 1; n <= n_limit; ++n) inner += f[n] * from_integer<T>(ramanujan_sum(l, static_cast<std::int64_t>(n)));
    r.coefficients[l] = ghat * inner;
    r.coefficients[l] /= from_integer<T>(static_cast<std::int64_t>(euler_phi(l)));
  }
  return r;
}

}  // namespace serial

/// Coefficients for l = 1..N, in parallel over l.
template <Scalar T>
ReefCoefficients<T> reef_coefficients(const TabulatedFunction<T>& f, const FiniteExpansion<T>& e, natural n_limit) {
  if (e.range_q > n_limit) throw InvalidInput("reef_coefficients: expansion range exceeds N");
  if (f.limit() < n_limit) throw InvalidInput("reef_coefficients: f table too short");
  std::vector<T> slots(n_limit);
  kernels::parallel_fill(slots, [&](std::size_t i) { return reef_coefficient(f, e, n_limit, i + 1); });
  ReefCoefficients<T> r{n_limit, std::vector<T>(static_cast<std::size_t>(n_limit) + 1, T(0))};
  for (natural l = 1; l <= n_limit; ++l) r.coefficients[l] = std::move(slots[l - 1]);
  return r;
}

/// sum_{l <= N} coefficient(l) c_l(a).
template <Scalar T>
T reef_evaluate(const ReefCoefficients<T>& r, natural a) {
  T s(0);
  for (natural l = 1; l <= r.n_limit; ++l) {
    if (is_zero(r.coefficients[l])) continue;
    const std::int64_t c = ramanujan_sum(l, static_cast<std::int64_t>(a));
    if (c != 0) s += r.coefficients[l] * from_integer<T>(c);
  }
  return s;
}

template <Scalar T>
struct ReefResidualRow {
  natural shift = 0;
  T direct{0};  // C_{f,g_N}(N, a)
  T reef{0};
  T residual{0};
};

template <Scalar T>
struct ReefResidual {
  natural n_limit = 0;
  std::vector<ReefResidualRow<T>> rows;
  T max_abs{0};
  bool zero() const { return is_zero(max_abs); }
};

/// Per-shift C_{f,g_N}(N,a) minus the explicit formula, with g_N cut at
/// min(N, g'.limit()).
template <Scalar T>
ReefResidual<T> reef_residual(const TabulatedFunction<T>& f, const EratosthenesTransform<T>& gprime,
                              natural n_limit, const std::vector<natural>& shifts) {
  const natural cutoff = std::min(n_limit, gprime.limit());
  const auto e = finite_expansion(gprime, cutoff);
  const auto coeffs = reef_coefficients(f, e, n_limit);
  const auto direct = truncated_profile(f, gprime, n_limit, shifts, cutoff);
  ReefResidual<T> out;
  out.n_limit = n_limit;
  out.rows.resize(shifts.size());
  std::vector<T> reef_values(shifts.size());
  kernels::parallel_fill(reef_values, [&](std::size_t i) { return reef_evaluate(coeffs, shifts[i]); });
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    auto& row = out.rows[i];
    row.shift = shifts[i];
    row.direct = direct.values[i];
    row.reef = reef_values[i];
    row.residual = row.direct - row.reef;
    const T mag = abs_value(row.residual);
    if (mag > out.max_abs) out.max_abs = mag;
  }
  return out;
}

template <Scalar T>
struct TheoremDecomposition {
  T correlation{0};  // C_{f,g}(N, a)
  T truncated{0};    // C_{f,g_N}(N, a)
  T main{0};         // explicit-formula value at a
  T error_term{0};   // correlation - main
  T tail_sum{0};     // sum_{N<q<=N+a} g'(q) sum_{n<=N, n=-a mod q} f(n)
  T tail_bound{0};   // max|f| max|g'| a over the tail range
  T reef_residual{0};  // truncated - main
};

/// g must be tabulated through N + a; g' entries past its limit count as zero.
template <Scalar T>
TheoremDecomposition<T> theorem_decomposition(const TabulatedFunction<T>& f, const TabulatedFunction<T>& g,
                                              const EratosthenesTransform<T>& gprime, natural n_limit, natural a) {
  TheoremDecomposition<T> d;
  const natural cutoff = std::min(n_limit, gprime.limit());
  d.correlation = correlate(f, g, n_limit, a);
  d.truncated = correlate(f, truncate(gprime, cutoff, n_limit + a), n_limit, a);
  const auto coeffs = reef_coefficients(f, finite_expansion(gprime, cutoff), n_limit);
  d.main = reef_evaluate(coeffs, a);
  d.error_term = d.correlation - d.main;
  d.reef_residual = d.truncated - d.main;

  T max_f(0), max_g(0);
  for (natural n = 1; n <= n_limit; ++n) {
    const T v = abs_value(f[n]);
    if (v > max_f) max_f = v;
  }
  for (natural q = n_limit + 1; q <= n_limit + a; ++q) {
    const T gq = gprime.value_or_zero(q);
    const T v = abs_value(gq);
    if (v > max_g) max_g = v;
    if (is_zero(gq)) continue;
    const natural r = (q - a % q) % q;
    T inner(0);
    for (natural n = r == 0 ? q : r; n <= n_limit; n += q) inner += f[n];
    d.tail_sum += gq * inner;
  }
  d.tail_bound = max_f * max_g * from_integer<T>(static_cast<std::int64_t>(a));
  return d;
}

/// sum_{q <= N} fhat(q) ghat(q) c_q(a); coefficients past an expansion's
/// range are zero.
template <Scalar T>
T singular_sum(const FiniteExpansion<T>& fexp, const FiniteExpansion<T>& gexp, natural n_limit, natural a) {
  const natural top = std::min({n_limit, fexp.range_q, gexp.range_q});
  T s(0);
  for (natural q = 1; q <= top; ++q) {
    if (is_zero(fexp.coefficients[q]) || is_zero(gexp.coefficients[q])) continue;
    const std::int64_t c = ramanujan_sum(q, static_cast<std::int64_t>(a));
    if (c != 0) s += fexp.coefficients[q] * gexp.coefficients[q] * from_integer<T>(c);
  }
  return s;
}

template <Scalar T>
struct CorollaryRow {
  natural shift = 0;
  T correlation{0};  // C_{f,g}(N, a)
  T prediction{0};   // singular sum times N
  double normalized_remainder = 0.0;  // |C - S N| / N^(1 - delta)
  bool tail_regime = false;           // a > N^(1 - delta): the truncation term dominates
};

template <Scalar T>
struct CorollaryReport {
  natural n_limit = 0;
  natural divisor_cutoff = 1;  // D = max support of f'
  double delta = 0.25;
  std::vector<CorollaryRow<T>> rows;
};

/// Compares C_{f,g}(N, a) with the singular sum times N for a D-truncated
/// divisor sum f. Requires log D / log N < 1 - delta.
template <Scalar T>
CorollaryReport<T> corollary_check(const EratosthenesTransform<T>& fprime, const EratosthenesTransform<T>& gprime,
                                   natural n_limit, double delta, const std::vector<natural>& shifts) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("corollary_check: delta must lie in (0, 1)");
  if (n_limit < 2) throw InvalidInput("corollary_check: N must be at least 2");
  const auto support = fprime.support();
  const natural d_cut = support.empty() ? 1 : support.back();
  if (!(std::log(static_cast<double>(d_cut)) / std::log(static_cast<double>(n_limit)) < 1.0 - delta)) {
    throw InvalidInput("corollary_check: f' support violates log D / log N < 1 - delta");
  }
  natural max_shift = 0;
  for (natural a : shifts) max_shift = std::max(max_shift, a);
  const auto f = inverse_transform(fprime, n_limit);
  const auto g = inverse_transform(gprime, n_limit + max_shift);
  const auto fexp = finite_expansion(fprime, std::min(fprime.limit(), n_limit));
  const auto gexp = finite_expansion(gprime, std::min(gprime.limit(), n_limit));

  CorollaryReport<T> out;
  out.n_limit = n_limit;
  out.divisor_cutoff = d_cut;
  out.delta = delta;
  const double scale = std::pow(static_cast<double>(n_limit), 1.0 - delta);
  for (natural a : shifts) {
    CorollaryRow<T> row;
    row.shift = a;
    row.correlation = correlate(f, g, n_limit, a);
    row.prediction = singular_sum(fexp, gexp, n_limit, a) * from_integer<T>(static_cast<std::int64_t>(n_limit));
    row.normalized_remainder = to_double(T(abs_value(T(row.correlation - row.prediction)))) / scale;
    row.tail_regime = static_cast<double>(a) > scale;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace reefkit
