#pragma once

// Points of the plane V and covectors of the dual plane V*. They are kept as
// distinct types so that a lattice in V can never be confused with its dual.

#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include "toricmld/rational.hpp"

namespace toricmld {

struct PointTag {};
struct CoVectorTag {};

template <class Tag>
struct Vec2 {
  Rational x1;
  Rational x2;

  Vec2() = default;
  Vec2(Rational a, Rational b) : x1(std::move(a)), x2(std::move(b)) {}

  bool is_zero() const { return x1 == 0 && x2 == 0; }

  Vec2 swapped() const { return {x2, x1}; }

  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x1 == b.x1 && a.x2 == b.x2; }

  // Lexicographic on (x1, x2).
  friend bool operator<(const Vec2& a, const Vec2& b) {
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.x2 < b.x2;
  }

  friend Vec2 operator+(const Vec2& a, const Vec2& b) {
    return {Rational(a.x1 + b.x1), Rational(a.x2 + b.x2)};
  }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) {
    return {Rational(a.x1 - b.x1), Rational(a.x2 - b.x2)};
  }
  friend Vec2 operator-(const Vec2& a) { return {Rational(-a.x1), Rational(-a.x2)}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) {
    return {Rational(s * a.x1), Rational(s * a.x2)};
  }
  friend Vec2 operator/(const Vec2& a, const Rational& s) {
    return {Rational(a.x1 / s), Rational(a.x2 / s)};
  }

  friend std::string to_string(const Vec2& v) {
    return "(" + to_string(v.x1) + "," + to_string(v.x2) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << to_string(v); }
};

/// Element of V = Q^2.
using Point = Vec2<PointTag>;
/// Element of V*, paired with V by <m, e> = m1 e1 + m2 e2.
using CoVector = Vec2<CoVectorTag>;

template <class V>
struct dual_space;
template <>
struct dual_space<Point> {
  using type = CoVector;
};
template <>
struct dual_space<CoVector> {
  using type = Point;
};
template <class V>
using dual_space_t = typename dual_space<V>::type;

/// The duality pairing. Symmetric in its arguments since V** = V.
template <class A, class B>
  requires std::is_same_v<dual_space_t<A>, B>
inline Rational pairing(const A& a, const B& b) {
  return a.x1 * b.x1 + a.x2 * b.x2;
}

template <class Tag>
inline Rational determinant(const Vec2<Tag>& a, const Vec2<Tag>& b) {
  return a.x1 * b.x2 - a.x2 * b.x1;
}

/// Closed standard cone: both coordinates >= 0. For covectors this is the
/// dual cone of the standard cone.
template <class Tag>
inline bool in_closed_cone(const Vec2<Tag>& v) {
  return v.x1 >= 0 && v.x2 >= 0;
}

/// Interior of the standard cone: both coordinates > 0.
template <class Tag>
inline bool in_open_cone(const Vec2<Tag>& v) {
  return v.x1 > 0 && v.x2 > 0;
}

/// In the closed cone with at least one coordinate exactly zero.
template <class Tag>
inline bool on_cone_boundary(const Vec2<Tag>& v) {
  return in_closed_cone(v) && (v.x1 == 0 || v.x2 == 0);
}

template <class Tag>
inline bool is_integral(const Vec2<Tag>& v) {
  return is_integer(v.x1) && is_integer(v.x2);
}

/// Primitive integer vector on the ray through a nonzero rational vector.
template <class Tag>
inline Vec2<Tag> primitive_integer_direction(const Vec2<Tag>& v) {
  detail::require(!v.is_zero(), "direction of the zero vector");
  Integer l = lcm_of(denominator_of(v.x1), denominator_of(v.x2));
  Integer a = numerator_of(Rational(v.x1 * l));
  Integer b = numerator_of(Rational(v.x2 * l));
  Integer g = gcd_of(abs_of(a), abs_of(b));
  return {Rational(a / g), Rational(b / g)};
}

}  // namespace toricmld
