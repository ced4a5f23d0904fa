#pragma once

// Toric log germs P in (X, B): a lattice N containing Z^2, the standard cone,
// and boundary coefficients b1, b2 on the two invariant divisors.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricmld/lattice.hpp"

namespace toricmld {

/// Whether make_germ insists that e1 = (1,0) and e2 = (0,1) are primitive in
/// N. Lattice-level callers (superlattice sweeps, the Lawrence decider) work
/// with arbitrary N containing Z^2 and use Relaxed.
enum class AxisCheck { Strict, Relaxed };

struct Germ {
  Lattice lattice;
  /// Generators the lattice was built from; kept so the oracle can rebuild
  /// the quotient group without going through the canonical basis.
  std::vector<Point> generators;
  Rational b1;
  Rational b2;
  std::optional<QuotientType> type;
  bool axes_primitive = true;

  CoVector psi() const { return {Rational(1 - b1), Rational(1 - b2)}; }

  /// The germ with coordinates interchanged.
  Germ swapped() const {
    Germ g;
    g.lattice = lattice.swapped();
    for (const auto& p : generators) g.generators.push_back(p.swapped());
    g.b1 = b2;
    g.b2 = b1;
    if (type) g.type = QuotientType{type->r, type->w2, type->w1};
    g.axes_primitive = axes_primitive;
    return g;
  }

  Germ with_boundary(Rational c1, Rational c2) const {
    Germ g = *this;
    g.b1 = std::move(c1);
    g.b2 = std::move(c2);
    detail::require(g.b1 >= 0 && g.b1 <= 1 && g.b2 >= 0 && g.b2 <= 1,
                    "boundary coefficients must lie in [0,1]");
    return g;
  }
};

inline std::string to_string(const Germ& g) {
  std::string head = g.type ? to_string(*g.type) : to_string(g.lattice);
  return head + " B=(" + to_string(g.b1) + "," + to_string(g.b2) + ")";
}

namespace detail {

inline Germ validated_germ(Lattice n, std::vector<Point> gens, Rational b1, Rational b2,
                           std::optional<QuotientType> type, AxisCheck axes) {
  require(n.rank() == 2, "germ lattice must have rank 2, got rank " + std::to_string(n.rank()));
  require(contains_standard_lattice(n), "germ lattice must contain Z^2");
  require(b1 >= 0 && b1 <= 1, "b1 = " + to_string(b1) + " is outside [0,1]");
  require(b2 >= 0 && b2 <= 1, "b2 = " + to_string(b2) + " is outside [0,1]");
  bool p1 = is_primitive(n, Point{1, 0});
  bool p2 = is_primitive(n, Point{0, 1});
  if (axes == AxisCheck::Strict) {
    require(p1, "e1 = (1,0) is not primitive in N");
    require(p2, "e2 = (0,1) is not primitive in N");
  }
  Germ g;
  g.lattice = std::move(n);
  g.generators = std::move(gens);
  g.b1 = std::move(b1);
  g.b2 = std::move(b2);
  g.type = type;
  g.axes_primitive = p1 && p2;
  return g;
}

}  // namespace detail

inline Germ make_germ(const Lattice& n, const Rational& b1, const Rational& b2,
                      AxisCheck axes = AxisCheck::Strict) {
  return detail::validated_germ(n, n.basis(), b1, b2, quotient_type_of(n), axes);
}

inline Germ make_germ(const QuotientType& type, const Rational& b1 = 0, const Rational& b2 = 0) {
  Lattice n = lattice_from_quotient_type(type);
  return detail::validated_germ(n, quotient_type_generators(type), b1, b2, type,
                                AxisCheck::Strict);
}

inline CoVector psi_of(const Germ& g) { return g.psi(); }

/// Log discrepancy <psi, e> of the toric valuation e in N, e in the cone.
inline Rational log_discrepancy(const Germ& g, const Point& e) {
  detail::require(!e.is_zero(), "log_discrepancy() of the zero vector");
  detail::require(in_closed_cone(e), to_string(e) + " is outside the cone");
  detail::require(contains(g.lattice, e), to_string(e) + " is not in N");
  return pairing(g.psi(), e);
}

struct MldResult {
  Rational value;
  std::vector<Point> minimizers;  // sorted
};

/// Minimum of <psi, .> over N in the open cone, for psi in the closed dual
/// cone. Computed over residues(N): reducing an interior point coordinatewise
/// into (0,1]^2 keeps it interior and cannot increase <psi, .>.
inline MldResult mld(const Lattice& n, const CoVector& psi) {
  detail::require(in_closed_cone(psi), "psi = " + to_string(psi) + " is outside the dual cone");
  MldResult out;
  bool first = true;
  for (const auto& e : residues(n)) {
    Rational v = pairing(psi, e);
    if (first || v < out.value) {
      out.value = v;
      out.minimizers.clear();
      first = false;
    }
    if (v == out.value) out.minimizers.push_back(e);
  }
  return out;
}

inline MldResult mld(const Germ& g) { return mld(g.lattice, g.psi()); }

}  // namespace toricmld
