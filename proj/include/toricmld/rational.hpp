#pragma once

// Exact scalars. Every quantity in the library is an arbitrary-precision
// rational; nothing is ever converted to floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "toricmld/error.hpp"

namespace toricmld {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline Integer floor_of(const Rational& r) {
  Integer n = numerator_of(r);
  Integer d = denominator_of(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer f = floor_of(r);
  return Rational(f) == r ? f : f + 1;
}

/// Fractional part in [0, 1).
inline Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

/// Representative of r modulo 1 in the half-open interval (0, 1].
inline Rational reduce_half_open(const Rational& r) { return r - Rational(ceil_of(r)) + 1; }

inline Integer gcd_of(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Integer abs_of(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs_of(const Rational& a) { return a < 0 ? Rational(-a) : a; }

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
struct Bezout {
  Integer g, s, t;
};

inline Bezout extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t to_int64(const Integer& i) {
  detail::ensure(i >= std::numeric_limits<std::int64_t>::min() &&
                     i <= std::numeric_limits<std::int64_t>::max(),
                 "integer does not fit in 64 bits: " + i.str());
  return i.convert_to<std::int64_t>();
}

/// "p/q", or "n" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline std::string to_string(const Integer& i) { return i.str(); }

/// Parses the grammar -?[0-9]+(/[1-9][0-9]*)? exactly.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
  static const std::regex grammar(R"(-?[0-9]+(/[1-9][0-9]*)?)");
  std::string s(text);
  if (!std::regex_match(s, grammar)) return std::nullopt;
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer num(s.substr(0, slash));
  Integer den(s.substr(slash + 1));
  return Rational(num, den);
}

inline Rational parse_rational(std::string_view text) {
  auto r = try_parse_rational(text);
  detail::require(r.has_value(), "not a rational number: '" + std::string(text) + "'");
  return *r;
}

/// A rational or +infinity. Used for the gamma functional (x/0 = +inf) and
/// for the open end of an interval.
class Extended {
 public:
  Extended() : infinite_(true) {}
  Extended(Rational value) : value_(std::move(value)), infinite_(false) {}  // NOLINT

  static Extended infinity() { return Extended(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    detail::ensure(!infinite_, "value() of an infinite extended rational");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::string to_string(const Extended& e) {
    return e.infinite_ ? std::string("inf") : to_string(e.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) {
    return os << to_string(e);
  }

 private:
  Rational value_;
  bool infinite_;
};

inline Extended min_of(const Extended& a, const Extended& b) { return b < a ? b : a; }

}  // namespace toricmld
