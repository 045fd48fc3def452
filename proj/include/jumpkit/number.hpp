#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace jumpkit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) { return Rational(Integer(num), Integer(den)); }

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer floor_of(const Rational& r) {
  Integer num = numerator(r);
  Integer den = denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

/// "a/b" in lowest terms, or "a" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Parses "a", "-a" or "a/b" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  require(valid_int(num) && valid_int(den), ErrorKind::ParseError, "not a rational: '" + text + "'");
  Integer d(den);
  require(d != 0, ErrorKind::ParseError, "zero denominator in '" + text + "'");
  return Rational(Integer(num), d);
}

inline std::int64_t parse_int64(const std::string& text) {
  Rational r = parse_rational(text);
  require(denominator(r) == 1, ErrorKind::ParseError, "not an integer: '" + text + "'");
  Integer z = numerator(r);
  require(z <= Integer(INT64_MAX) && z >= Integer(INT64_MIN), ErrorKind::ParseError, "integer out of range: " + text);
  return static_cast<std::int64_t>(z);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f <= n / f; ++f)
    if (n % f == 0) return false;
  return true;
}

/// Returns m >= 1 with n == p^m, or 0 when n is not a positive power of p.
inline int power_of(std::int64_t n, std::int64_t p) {
  if (p < 2 || n < p) return 0;
  int m = 0;
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  return n == 1 ? m : 0;
}

inline Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Integer pow_int(const Integer& base, std::int64_t exponent) {
  Integer r = 1;
  for (std::int64_t i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace jumpkit
