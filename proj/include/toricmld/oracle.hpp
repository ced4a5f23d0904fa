#pragma once

// Brute-force ground truth. Nothing here goes through the canonical basis or
// the residue enumeration of lattice.hpp: the quotient group N/Z^2 is rebuilt
// from raw generators (or from k * (w1, w2) mod r for cyclic types) and every
// point is visited.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <span>
#include <vector>

#include "toricmld/germ.hpp"

namespace toricmld::oracle {

struct OracleMld {
  Rational value;
  std::vector<Point> argmin;  // sorted
};

namespace detail {

inline Rational mod_one(const Rational& x) {
  Integer n = numerator_of(x);
  Integer d = denominator_of(x);
  Integer r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

// [0,1) representative -> (0,1] representative.
inline Rational lift(const Rational& x) { return x == 0 ? Rational(1) : x; }

inline OracleMld minimize(const std::vector<Point>& box_points, const CoVector& psi) {
  toricmld::detail::require(psi.x1 >= 0 && psi.x2 >= 0, "oracle needs psi in the dual cone");
  OracleMld out;
  bool first = true;
  for (const auto& e : box_points) {
    Rational v = psi.x1 * e.x1 + psi.x2 * e.x2;
    if (first || v < out.value) {
      out.value = v;
      out.argmin.clear();
      first = false;
    }
    if (v == out.value) out.argmin.push_back(e);
  }
  std::sort(out.argmin.begin(), out.argmin.end());
  return out;
}

}  // namespace detail

/// All classes of the group generated by `generators` modulo Z^2, as points
/// of (0,1]^2.
inline std::vector<Point> quotient_points(std::span<const Point> generators) {
  std::vector<Point> gens;
  for (const auto& g : generators) {
    Point r{detail::mod_one(g.x1), detail::mod_one(g.x2)};
    if (!r.is_zero()) gens.push_back(r);
  }
  std::set<Point> seen{Point{0, 0}};
  std::deque<Point> queue{Point{0, 0}};
  while (!queue.empty()) {
    Point p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Point q{detail::mod_one(p.x1 + g.x1), detail::mod_one(p.x2 + g.x2)};
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  std::vector<Point> out;
  for (const auto& p : seen) out.push_back(Point{detail::lift(p.x1), detail::lift(p.x2)});
  std::sort(out.begin(), out.end());
  return out;
}

/// Points k (w1, w2) / r mod Z^2, k = 0..r-1, in (0,1]^2.
inline std::vector<Point> cyclic_points(std::int64_t r, std::int64_t w1, std::int64_t w2) {
  std::vector<Point> out;
  for (std::int64_t k = 0; k < r; ++k) {
    std::int64_t a = ((k * w1) % r + r) % r;
    std::int64_t b = ((k * w2) % r + r) % r;
    out.push_back(Point{a == 0 ? Rational(1) : Rational(a, r), b == 0 ? Rational(1) : Rational(b, r)});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline OracleMld mld_oracle(std::span<const Point> generators, const CoVector& psi) {
  return detail::minimize(quotient_points(generators), psi);
}

inline OracleMld mld_oracle_cyclic(std::int64_t r, std::int64_t w1, std::int64_t w2,
                                   const CoVector& psi) {
  return detail::minimize(cyclic_points(r, w1, w2), psi);
}

/// (mld, argmin) of a germ by exhaustive sweep of N/Z^2.
inline OracleMld mld_oracle(const Germ& g) {
  CoVector psi{Rational(1 - g.b1), Rational(1 - g.b2)};
  if (g.type) return mld_oracle_cyclic(g.type->r, g.type->w1, g.type->w2, psi);
  return mld_oracle(std::span<const Point>(g.generators), psi);
}

/// Same germ lattice, other boundary.
inline OracleMld mld_oracle(const Germ& g, const Rational& b1, const Rational& b2) {
  Germ h = g;
  h.b1 = b1;
  h.b2 = b2;
  return mld_oracle(h);
}

/// No point e of G in the open cone has <psi, e> < t.
inline bool tlc_oracle(const Lattice& g, const CoVector& psi, const Rational& t) {
  for (const auto& e : quotient_points(std::span<const Point>(g.basis()))) {
    if (psi.x1 * e.x1 + psi.x2 * e.x2 < t) return false;
  }
  return true;
}

/// G misses U = { x, y > 0, x + y < p/q }.
inline bool lawrence_oracle(const Lattice& g, std::int64_t p, std::int64_t q) {
  return tlc_oracle(g, CoVector{1, 1}, Rational(p, q));
}

}  // namespace toricmld::oracle
