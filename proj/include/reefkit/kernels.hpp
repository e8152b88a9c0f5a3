#pragma once

// Data-parallel building blocks. Every OpenMP kernel here has a serial
// counterpart in reefkit::serial that fixes the reference semantics; tests
// compare the two and bench/ times them.
//
// Real-valued reductions use a fixed block partition that does not depend on
// the thread count, so results are bit-identical across runs and machines.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <vector>

#include "reefkit/arith_core.hpp"

namespace reefkit {

namespace serial {

/// sum_{i = first}^{last} term(i), ascending.
template <class Term>
double ascending_sum(natural first, natural last, Term&& term) {
  double s = 0.0;
  for (natural i = first; i <= last; ++i) s += term(i);
  return s;
}

template <class T, class Fn>
void fill(std::vector<T>& out, Fn&& fn) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i);
}

}  // namespace serial

namespace kernels {

inline constexpr natural kReductionBlock = 8192;

/// Blocked sum: each block of kReductionBlock indices is summed ascending,
/// then block totals are added ascending.
template <class Term>
double blocked_sum(natural first, natural last, Term&& term) {
  if (last < first) return 0.0;
  const natural count = last - first + 1;
  const natural blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nblocks = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nblocks; ++b) {
    const natural lo = first + static_cast<natural>(b) * kReductionBlock;
    const natural hi = std::min(last, lo + kReductionBlock - 1);
    double s = 0.0;
    for (natural i = lo; i <= hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

/// out[i] = fn(i) for every slot, in parallel. The first exception thrown by
/// any slot is rethrown after the loop.
template <class T, class Fn>
void parallel_fill(std::vector<T>& out, Fn&& fn) {
  std::exception_ptr error;
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(reefkit_parallel_fill)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace kernels

}  // namespace reefkit
