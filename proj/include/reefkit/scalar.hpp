#pragma once

// Value types for tabulated arithmetic functions.
//
// Two modes exist: exact rationals (GMP) for identity testing, and IEEE
// doubles where logarithms force real arithmetic. Everything templated on a
// scalar works with either.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace reefkit {

using Rational = mpq_class;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

enum class Mode { rational, real };

template <Scalar T>
constexpr Mode mode_of() {
  return std::is_same_v<T, Rational> ? Mode::rational : Mode::real;
}

inline std::string_view to_string(Mode m) { return m == Mode::rational ? "rational" : "real"; }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return std::fabs(x); }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

/// Builds p/q in canonical form.
inline Rational make_rational(std::int64_t p, std::int64_t q = 1) {
  Rational r(mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q)));
  r.canonicalize();
  return r;
}

template <Scalar T>
T from_integer(std::int64_t v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return make_rational(v);
  } else {
    return static_cast<double>(v);
  }
}

/// Exact text ("p/q", or "p" for integers).
inline std::string to_text(const Rational& x) { return x.get_str(); }

/// Parses "p", "p/q", or a decimal like "-1.25" exactly. Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// True if the text is an exact integer or fraction (no decimal point/exponent).
bool looks_rational(std::string_view text);

double parse_real(std::string_view text);

}  // namespace reefkit
