#pragma once

// Finitely generated subgroups of Q^2 (and of its dual) in Hermite normal
// form.
//
// Canonical basis convention, for a lattice of rank 2:
//
//     b1 = (p1, x)      p1 > 0
//     b2 = (0,  p2)     p2 > 0,  0 <= x < p2
//
// Rank 1 lattices keep a single generator whose first nonzero coordinate is
// positive. The form is unique, so two lattices are equal as subgroups iff
// their bases are equal.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "toricmld/rational.hpp"
#include "toricmld/vec2.hpp"

namespace toricmld {

template <class V>
class BasicLattice;

template <class V>
BasicLattice<V> lattice_from_generators(std::span<const V> gens);

template <class V>
class BasicLattice {
 public:
  using value_type = V;

  /// The trivial group.
  BasicLattice() = default;

  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<V>& basis() const { return basis_; }

  BasicLattice swapped() const {
    std::vector<V> gens;
    for (const auto& b : basis_) gens.push_back(b.swapped());
    return lattice_from_generators<V>(gens);
  }

  friend bool operator==(const BasicLattice& a, const BasicLattice& b) {
    return a.basis_ == b.basis_;
  }

  // Rank first, then lexicographic on the basis rows.
  friend bool operator<(const BasicLattice& a, const BasicLattice& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return std::lexicographical_compare(a.basis_.begin(), a.basis_.end(), b.basis_.begin(),
                                        b.basis_.end());
  }

  friend std::string to_string(const BasicLattice& l) {
    std::string s = "[";
    for (std::size_t i = 0; i < l.basis_.size(); ++i) {
      if (i) s += ",";
      s += to_string(l.basis_[i]);
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicLattice& l) { return os << to_string(l); }

 private:
  explicit BasicLattice(std::vector<V> basis) : basis_(std::move(basis)) {}
  friend BasicLattice lattice_from_generators<V>(std::span<const V> gens);

  std::vector<V> basis_;
};

using Lattice = BasicLattice<Point>;
using DualLattice = BasicLattice<CoVector>;

namespace detail {

struct IntRow {
  Integer a, b;
};

inline Integer floor_mod(const Integer& y, const Integer& h) {
  Integer r = y % h;
  if (r < 0) r += h;
  return r;
}

}  // namespace detail

/// Canonical basis of the subgroup generated by `gens`. The empty list
/// generates the trivial group.
template <class V>
BasicLattice<V> lattice_from_generators(std::span<const V> gens) {
  Integer scale = 1;
  for (const auto& g : gens) {
    scale = lcm_of(scale, denominator_of(g.x1));
    scale = lcm_of(scale, denominator_of(g.x2));
  }
  std::vector<detail::IntRow> rows;
  for (const auto& g : gens) {
    rows.push_back({numerator_of(Rational(g.x1 * scale)), numerator_of(Rational(g.x2 * scale))});
  }

  // Column elimination: fold every row with a nonzero first entry into a
  // single pivot row; what remains has first entry zero.
  std::optional<detail::IntRow> pivot;
  Integer h = 0;
  for (auto row : rows) {
    if (row.a != 0) {
      if (!pivot) {
        pivot = row;
        continue;
      }
      Bezout bz = extended_gcd(pivot->a, row.a);
      detail::IntRow merged{bz.g, bz.s * pivot->b + bz.t * row.b};
      Integer rest = (row.a / bz.g) * pivot->b - (pivot->a / bz.g) * row.b;
      pivot = merged;
      h = gcd_of(h, abs_of(rest));
    } else {
      h = gcd_of(h, abs_of(row.b));
    }
  }

  std::vector<V> basis;
  const Rational inv(Integer(1), scale);
  if (!pivot) {
    if (h != 0) basis.push_back(V{Rational(0), Rational(h) * inv});
  } else {
    if (pivot->a < 0) pivot = detail::IntRow{-pivot->a, -pivot->b};
    if (h == 0) {
      basis.push_back(V{Rational(pivot->a) * inv, Rational(pivot->b) * inv});
    } else {
      basis.push_back(V{Rational(pivot->a) * inv, Rational(detail::floor_mod(pivot->b, h)) * inv});
      basis.push_back(V{Rational(0), Rational(h) * inv});
    }
  }
  return BasicLattice<V>(std::move(basis));
}

template <class V>
BasicLattice<V> lattice_from_generators(std::initializer_list<V> gens) {
  return lattice_from_generators<V>(std::span<const V>(gens.begin(), gens.size()));
}

template <class V>
BasicLattice<V> lattice_from_generators(const std::vector<V>& gens) {
  return lattice_from_generators<V>(std::span<const V>(gens));
}

/// Cyclic quotient type 1/r(w1, w2): the lattice Z^2 + Z (w1/r, w2/r).
struct QuotientType {
  std::int64_t r = 1;
  std::int64_t w1 = 0;
  std::int64_t w2 = 0;

  Point generator() const { return {Rational(w1, r), Rational(w2, r)}; }

  friend bool operator==(const QuotientType&, const QuotientType&) = default;
  friend std::string to_string(const QuotientType& q) {
    return "1/" + std::to_string(q.r) + "(" + std::to_string(q.w1) + "," + std::to_string(q.w2) + ")";
  }
};

inline std::vector<Point> quotient_type_generators(const QuotientType& type) {
  return {Point{1, 0}, Point{0, 1}, type.generator()};
}

inline Lattice lattice_from_quotient_type(std::int64_t r, std::int64_t w1, std::int64_t w2) {
  detail::require(r >= 1, "quotient order r must be positive, got " + std::to_string(r));
  detail::require(std::gcd(w1, r) == 1,
                  "gcd(w1, r) = " + std::to_string(std::gcd(w1, r)) + " != 1 for w1 = " +
                      std::to_string(w1) + ", r = " + std::to_string(r));
  detail::require(std::gcd(w2, r) == 1,
                  "gcd(w2, r) = " + std::to_string(std::gcd(w2, r)) + " != 1 for w2 = " +
                      std::to_string(w2) + ", r = " + std::to_string(r));
  return lattice_from_generators(quotient_type_generators({r, w1, w2}));
}

inline Lattice lattice_from_quotient_type(const QuotientType& t) {
  return lattice_from_quotient_type(t.r, t.w1, t.w2);
}

/// Integer coordinates of v in the canonical basis, or nullopt if v is not in
/// the lattice.
template <class V>
std::optional<std::vector<Integer>> coordinates(const BasicLattice<V>& l, const V& v) {
  const auto& b = l.basis();
  switch (l.rank()) {
    case 0:
      if (v.is_zero()) return std::vector<Integer>{};
      return std::nullopt;
    case 1: {
      const V& g = b[0];
      Rational c = g.x1 != 0 ? Rational(v.x1 / g.x1) : Rational(v.x2 / g.x2);
      if (!is_integer(c) || Rational(c * g.x1) != v.x1 || Rational(c * g.x2) != v.x2)
        return std::nullopt;
      return std::vector<Integer>{numerator_of(c)};
    }
    default: {
      Rational c1 = v.x1 / b[0].x1;
      if (!is_integer(c1)) return std::nullopt;
      Rational c2 = (v.x2 - c1 * b[0].x2) / b[1].x2;
      if (!is_integer(c2)) return std::nullopt;
      return std::vector<Integer>{numerator_of(c1), numerator_of(c2)};
    }
  }
}

template <class V>
bool contains(const BasicLattice<V>& l, const V& v) {
  return coordinates(l, v).has_value();
}

/// True iff the lattice is rank 2 and contains Z^2.
template <class V>
bool contains_standard_lattice(const BasicLattice<V>& l) {
  return l.rank() == 2 && contains(l, V{1, 0}) && contains(l, V{0, 1});
}

/// [L : Z^2] for a rank-2 lattice containing Z^2.
template <class V>
Integer index(const BasicLattice<V>& l) {
  detail::require(l.rank() == 2, "index() needs a rank-2 lattice, got rank " +
                                     std::to_string(l.rank()));
  detail::require(contains_standard_lattice(l), "index() needs a lattice containing Z^2");
  Rational det = l.basis()[0].x1 * l.basis()[1].x2;
  Rational idx = 1 / det;
  detail::ensure(is_integer(idx), "non-integral index over Z^2");
  return numerator_of(idx);
}

/// Representatives of L / Z^2 moved into the box (0,1]^2, sorted.
template <class V>
std::vector<V> residues(const BasicLattice<V>& l) {
  Integer n = index(l);
  const V& b1 = l.basis()[0];
  const V& b2 = l.basis()[1];
  // p1 = 1/k1 and p2 = 1/k2 because (1,0), (0,1) lie in L.
  Integer k1 = numerator_of(Rational(1 / b1.x1));
  Integer k2 = numerator_of(Rational(1 / b2.x2));
  std::vector<V> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Integer i = 0; i < k1; ++i) {
    for (Integer j = 0; j < k2; ++j) {
      Rational y1 = Rational(i) * b1.x1;
      Rational y2 = Rational(i) * b1.x2 + Rational(j) * b2.x2;
      out.push_back(V{reduce_half_open(y1), reduce_half_open(y2)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff L meets the line Q v exactly in Z v. Requires v in L, v != 0.
template <class V>
bool is_primitive(const BasicLattice<V>& l, const V& v) {
  detail::require(!v.is_zero(), "is_primitive() of the zero vector");
  auto c = coordinates(l, v);
  detail::require(c.has_value(), "is_primitive(): " + to_string(v) + " is not in the lattice");
  Integer g = 0;
  for (const auto& ci : *c) g = gcd_of(g, abs_of(ci));
  return g == 1;
}

/// Generator of L intersected with the line Q d, pointing the same way as d.
template <class V>
V primitive_along(const BasicLattice<V>& l, const V& direction) {
  detail::require(l.rank() == 2, "primitive_along() needs a rank-2 lattice");
  detail::require(!direction.is_zero(), "primitive_along() of the zero vector");
  const V& b1 = l.basis()[0];
  const V& b2 = l.basis()[1];
  Rational c1 = direction.x1 / b1.x1;
  Rational c2 = (direction.x2 - c1 * b1.x2) / b2.x2;
  auto c = primitive_integer_direction(Vec2<PointTag>{c1, c2});
  return V{Rational(c.x1 * b1.x1), Rational(c.x1 * b1.x2 + c.x2 * b2.x2)};
}

/// Dual of a lattice, split into its lattice part and the linear subspace
/// it contains (nonempty only when rank < 2).
template <class V>
struct DualResult {
  BasicLattice<dual_space_t<V>> lattice;
  std::vector<dual_space_t<V>> linear_span;
};

template <class V>
DualResult<V> dual_full(const BasicLattice<V>& l) {
  using W = dual_space_t<V>;
  const auto& b = l.basis();
  switch (l.rank()) {
    case 0:
      return {BasicLattice<W>{}, {W{1, 0}, W{0, 1}}};
    case 1: {
      const V& g = b[0];
      Rational norm = g.x1 * g.x1 + g.x2 * g.x2;
      W part{Rational(g.x1 / norm), Rational(g.x2 / norm)};
      W perp = primitive_integer_direction(W{Rational(-g.x2), g.x1});
      if (perp.x1 < 0 || (perp.x1 == 0 && perp.x2 < 0)) perp = -perp;
      return {lattice_from_generators({part}), {perp}};
    }
    default: {
      // Rows of the inverse transpose of [[p1, x], [0, p2]].
      const Rational& p1 = b[0].x1;
      const Rational& x = b[0].x2;
      const Rational& p2 = b[1].x2;
      W m1{Rational(1 / p1), Rational(0)};
      W m2{Rational(-x / (p1 * p2)), Rational(1 / p2)};
      return {lattice_from_generators({m1, m2}), {}};
    }
  }
}

/// Lattice part of the dual subgroup {m : <m, L> in Z}.
template <class V>
BasicLattice<dual_space_t<V>> dual(const BasicLattice<V>& l) {
  return dual_full(l).lattice;
}

struct InteriorPoint {
  Point point;
};
struct CoWitness {
  CoVector phi;
};

/// Either a lattice point in the open positive quadrant, or a nonzero phi in
/// the dual cone whose whole line pairs integrally with L (L lies in phi's
/// kernel), certifying that no interior point exists.
inline std::variant<InteriorPoint, CoWitness> interior_witness(const Lattice& l) {
  const auto& b = l.basis();
  switch (l.rank()) {
    case 0:
      return CoWitness{CoVector{1, 1}};
    case 1: {
      const Point& g = b[0];
      if (in_open_cone(g)) return InteriorPoint{g};
      if (in_open_cone(-g)) return InteriorPoint{-g};
      auto phi = primitive_integer_direction(CoVector{abs_of(g.x2), abs_of(g.x1)});
      return CoWitness{phi};
    }
    default: {
      // b1 + k b2 with the least k >= 0 making the second coordinate positive.
      const Point& b1 = b[0];
      const Point& b2 = b[1];
      Integer k = 0;
      if (b1.x2 <= 0) k = floor_of(Rational(-b1.x2 / b2.x2)) + 1;
      return InteriorPoint{b1 + Rational(k) * b2};
    }
  }
}

struct GapEmpty {
  Rational dual_element;  // y in G* with 0 < y <= 1/t
};
struct GapHit {
  Rational element;  // x in G with 0 < x < t
};

/// One-dimensional gap test for G = Z g (g >= 0, g = 0 the trivial group):
/// G misses (0, t) iff the dual group meets (0, 1/t].
inline std::variant<GapEmpty, GapHit> gap_witness_1d(const Rational& g, const Rational& t) {
  detail::require(t > 0, "gap_witness_1d() needs t > 0, got " + to_string(t));
  detail::require(g >= 0, "gap_witness_1d() needs a generator g >= 0, got " + to_string(g));
  if (g == 0) return GapEmpty{Rational(1 / t)};
  if (g >= t) return GapEmpty{Rational(1 / g)};
  return GapHit{g};
}

/// Cyclic quotient type read off a canonical basis [(1/r, w/r), (0, 1)],
/// when the lattice has that shape and both axes are primitive.
inline std::optional<QuotientType> quotient_type_of(const Lattice& l) {
  if (!contains_standard_lattice(l)) return std::nullopt;
  const Point& b1 = l.basis()[0];
  const Point& b2 = l.basis()[1];
  if (b2.x2 != 1 || numerator_of(b1.x1) != 1) return std::nullopt;
  Integer r = denominator_of(b1.x1);
  if (r == 1) return QuotientType{1, 0, 0};
  Rational w = b1.x2 * r;
  if (!is_integer(w) || gcd_of(numerator_of(w), r) != 1) return std::nullopt;
  return QuotientType{to_int64(r), 1, to_int64(numerator_of(w))};
}

}  // namespace toricmld
