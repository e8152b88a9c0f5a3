#include "reefkit/scalar.hpp"

#include <charconv>
#include <string>

#include "reefkit/error.hpp"

namespace reefkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool is_signed_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

}  // namespace

bool looks_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return is_signed_integer(text);
  return is_signed_integer(text.substr(0, slash)) && all_digits(text.substr(slash + 1));
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (looks_rational(text)) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
      throw InvalidInput("malformed rational: " + std::string(text));
    }
    r.canonicalize();
    return r;
  }
  // Plain decimal without exponent: exact as a decimal fraction.
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  if (dot == std::string_view::npos) throw InvalidInput("malformed rational: " + std::string(text));
  std::string_view ip = body.substr(0, dot);
  std::string_view fp = body.substr(dot + 1);
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
    throw InvalidInput("malformed rational: " + std::string(text));
  }
  mpz_class num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
  Rational r(num, den);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (looks_rational(text)) return parse_rational(text).get_d();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("malformed number: " + std::string(text));
  }
  return v;
}

}  // namespace reefkit
