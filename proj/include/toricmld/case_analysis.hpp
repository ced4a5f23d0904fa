#pragma once

// The gamma functional on the dual cone, its maximizer over the dual lattice,
// and the structural case split that expresses psi in a lattice basis of
// M = N* adapted to the maximizer.

#include <optional>
#include <string>

#include "toricmld/germ.hpp"

namespace toricmld {

/// gamma(m) = sup{ s >= 0 : psi - s m in the dual cone } = min_i psi_i / m_i,
/// with x/0 = +inf.
inline Extended gamma_of(const CoVector& m, const CoVector& psi) {
  detail::require(in_closed_cone(m), "m = " + to_string(m) + " is outside the dual cone");
  detail::require(in_closed_cone(psi), "psi = " + to_string(psi) + " is outside the dual cone");
  Extended g = Extended::infinity();
  if (m.x1 != 0) g = min_of(g, Rational(psi.x1 / m.x1));
  if (m.x2 != 0) g = min_of(g, Rational(psi.x2 / m.x2));
  return g;
}

/// Calls fn(m) for every m of the rank-2 lattice M in the box
/// [0, x_max] x [0, y_max], in lexicographic order.
template <class Fn>
void for_each_in_box(const DualLattice& m, const Rational& x_max, const Rational& y_max, Fn&& fn) {
  detail::require(m.rank() == 2, "box enumeration needs a rank-2 lattice");
  const CoVector& b1 = m.basis()[0];
  const CoVector& b2 = m.basis()[1];
  if (x_max < 0 || y_max < 0) return;
  Integer i_max = floor_of(Rational(x_max / b1.x1));
  for (Integer i = 0; i <= i_max; ++i) {
    Rational first = Rational(i) * b1.x1;
    Rational base = Rational(i) * b1.x2;
    Integer j_lo = ceil_of(Rational(-base / b2.x2));
    Integer j_hi = floor_of(Rational((y_max - base) / b2.x2));
    for (Integer j = j_lo; j <= j_hi; ++j) {
      fn(CoVector{first, Rational(base + Rational(j) * b2.x2)});
    }
  }
}

struct GammaMax {
  Rational gamma;
  CoVector v1;  // lexicographically least maximizer
};

/// max gamma(m) over m in M intersected with the dual cone, m != 0.
///
/// Every maximizer satisfies gamma(m) >= lambda/2, i.e. m_i <= 2 psi_i /
/// lambda, so the search runs over that finite box of M.
inline GammaMax gamma_max(const Lattice& n, const CoVector& psi) {
  detail::require(!psi.is_zero(), "gamma_max() needs psi != 0 (B != Sigma)");
  Rational lambda = mld(n, psi).value;
  detail::ensure(lambda > 0, "nonzero psi with zero mld");
  DualLattice m = dual(n);
  std::optional<GammaMax> best;
  for_each_in_box(m, Rational(2 * psi.x1 / lambda), Rational(2 * psi.x2 / lambda),
                  [&](const CoVector& c) {
                    if (c.is_zero()) return;
                    Extended g = gamma_of(c, psi);
                    if (!best || g > Extended(best->gamma)) best = GammaMax{g.value(), c};
                  });
  detail::ensure(best.has_value(), "empty gamma search box");
  return *best;
}

inline GammaMax gamma_max(const Germ& g) { return gamma_max(g.lattice, g.psi()); }

enum class CaseTag { BoundaryPsi, CaseI, CaseIII };

/// Position of v1 within case III: on the boundary of the dual cone (the
/// interval {e1 + t e2} is unbounded above), or interior with beta = 1 (A)
/// or beta > 1 (B).
enum class Subcase { BoundaryV1, InteriorA, InteriorB };

inline std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::BoundaryPsi: return "boundary_psi";
    case CaseTag::CaseI: return "I";
    case CaseTag::CaseIII: return "III";
  }
  return "?";
}

inline std::string to_string(Subcase s) {
  switch (s) {
    case Subcase::BoundaryV1: return "boundary_v1";
    case Subcase::InteriorA: return "A";
    case Subcase::InteriorB: return "B";
  }
  return "?";
}

/// G = Z e with e interior: the covectors pairing to 1 with e form a segment
/// with endpoints m1 = (1/e_1, 0), m2 = (0, 1/e_2).
struct CaseIData {
  Point e;
  CoVector m1;
  CoVector m2;
};

struct CaseIIIData {
  Point e1;  // <v1, e1> = 1
  Point e2;  // generator of N on the line v1 = 0, oriented so psi' >= 0
  Rational alpha;  // in [0, 1)
  Extended beta;   // {e in int sigma : <v1,e> = 1} = {e1 + t e2 : alpha < t < beta}
  Rational psi_prime;
  CoVector v2;  // <v2, e1> = 0, <v2, e2> = 1
  Rational lambda_prime;
  Integer q_min;  // least q >= 1 with q alpha integral
  std::optional<Rational> c;  // 1 + psi' (beta - alpha), finite beta only
  Subcase subcase;
};

struct CaseData {
  Rational gamma;
  CoVector v1;
  Rational lambda;
  CaseTag tag = CaseTag::BoundaryPsi;
  std::optional<CaseIData> case1;
  std::optional<CaseIIIData> case3;
};

namespace detail {

// Open interval of t with e1 + t e2 in the open cone.
struct OpenInterval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool empty = false;
};

inline OpenInterval interior_interval(const Point& e1, const Point& e2) {
  OpenInterval out;
  auto constrain = [&](const Rational& x, const Rational& y) {
    if (y == 0) {
      if (x <= 0) out.empty = true;
      return;
    }
    Rational bound = -x / y;
    if (y > 0) {
      if (!out.lo || bound > *out.lo) out.lo = bound;
    } else {
      if (!out.hi || bound < *out.hi) out.hi = bound;
    }
  };
  constrain(e1.x1, e2.x1);
  constrain(e1.x2, e2.x2);
  return out;
}

inline CaseIIIData analyze_case_three(const Lattice& n, const CoVector& psi, const Rational& gamma,
                                      const CoVector& v1) {
  CaseIIIData d;
  const CoVector shifted = psi / gamma - v1;

  Point e2 = primitive_along(n, Point{v1.x2, Rational(-v1.x1)});
  Rational pp = pairing(shifted, e2);
  if (pp < 0 || (pp == 0 && e2 < -e2)) e2 = -e2;
  d.psi_prime = pairing(shifted, e2);

  const Point& b1 = n.basis()[0];
  const Point& b2 = n.basis()[1];
  Rational u1 = pairing(v1, b1);
  Rational u2 = pairing(v1, b2);
  ensure(is_integer(u1) && is_integer(u2), "v1 does not pair integrally with N");
  Bezout bz = extended_gcd(numerator_of(u1), numerator_of(u2));
  ensure(bz.g == 1, "<v1, N> is not all of Z");
  Point e1 = Rational(bz.s) * b1 + Rational(bz.t) * b2;

  OpenInterval iv = interior_interval(e1, e2);
  ensure(!iv.empty && iv.lo.has_value(), "case III interval has no finite lower end");
  Integer shift = floor_of(*iv.lo);
  e1 = e1 + Rational(shift) * e2;
  d.alpha = *iv.lo - Rational(shift);
  d.beta = iv.hi ? Extended(Rational(*iv.hi - Rational(shift))) : Extended::infinity();
  ensure(d.beta > Extended(d.alpha), "case III interval is empty");
  ensure(pairing(psi - gamma * v1, e1 + d.alpha * e2) == 0,
         "psi - gamma v1 does not vanish on e1 + alpha e2");
  d.e1 = e1;
  d.e2 = e2;

  Rational c = -1 / determinant(e1, e2);
  d.v2 = CoVector{Rational(c * e1.x2), Rational(-c * e1.x1)};

  d.q_min = denominator_of(d.alpha);
  d.lambda_prime = gamma * d.psi_prime / Rational(d.q_min);

  bool v1_interior = in_open_cone(v1);
  ensure(v1_interior == d.beta.is_finite(), "beta finiteness disagrees with the position of v1");
  if (d.beta.is_infinite()) {
    d.subcase = Subcase::BoundaryV1;
  } else {
    d.c = 1 + d.psi_prime * (d.beta.value() - d.alpha);
    d.subcase = d.beta.value() == 1 ? Subcase::InteriorA : Subcase::InteriorB;
    if (d.subcase == Subcase::InteriorA) {
      ensure(d.psi_prime == 0 && d.alpha == 0, "subcase A requires psi' = 0 and alpha = 0");
    }
  }
  return d;
}

}  // namespace detail

/// Full structural analysis of (N, psi) for a rank-2 N containing Z^2.
///
/// psi on the boundary of the dual cone gives lambda = gamma and
/// psi = gamma v1. Otherwise N meets the line v1 = 0 in a nonzero discrete
/// group (case III) and lambda follows from the subcase formulas.
inline CaseData case_analysis(const Lattice& n, const CoVector& psi) {
  detail::require(!psi.is_zero(), "case analysis needs psi != 0 (B != Sigma)");
  detail::require(in_closed_cone(psi), "psi = " + to_string(psi) + " is outside the dual cone");
  detail::require(contains_standard_lattice(n), "case analysis needs a lattice containing Z^2");

  GammaMax gm = gamma_max(n, psi);
  CaseData d;
  d.gamma = gm.gamma;
  d.v1 = gm.v1;

  if (psi.x1 == 0 || psi.x2 == 0) {
    d.tag = CaseTag::BoundaryPsi;
    d.lambda = d.gamma;
    detail::ensure(psi == d.gamma * d.v1, "boundary psi is not gamma v1");
    return d;
  }

  // Rank-2 rational N always meets the line v1 = 0 in a nonzero discrete
  // group, so the dense case cannot occur here.
  d.tag = CaseTag::CaseIII;
  CaseIIIData c3 = detail::analyze_case_three(n, psi, d.gamma, d.v1);
  if (c3.subcase == Subcase::InteriorA) {
    d.lambda = 2 * d.gamma;
  } else {
    d.lambda = d.gamma * (1 + c3.psi_prime * (1 - c3.alpha));
  }
  d.case3 = std::move(c3);
  return d;
}

inline CaseData case_analysis(const Germ& g) { return case_analysis(g.lattice, g.psi()); }

/// Companion entry point that also accepts rank-1 subgroups G = Z e with e
/// interior (case I). Rank-2 input must contain Z^2 and is passed through.
inline CaseData case_analysis_subgroup(const Lattice& g, const CoVector& psi) {
  detail::require(!psi.is_zero(), "case analysis needs psi != 0");
  detail::require(in_closed_cone(psi), "psi = " + to_string(psi) + " is outside the dual cone");
  if (g.rank() == 2) return case_analysis(g, psi);
  detail::require(g.rank() == 1, "case analysis needs a nonzero subgroup");
  Point e = g.basis()[0];
  if (!in_open_cone(e)) e = -e;
  detail::require(in_open_cone(e), "subgroup does not meet the open cone");
  CaseData d;
  d.lambda = pairing(psi, e);
  d.gamma = d.lambda;
  d.v1 = psi / d.lambda;
  d.tag = (psi.x1 == 0 || psi.x2 == 0) ? CaseTag::BoundaryPsi : CaseTag::CaseI;
  d.case1 = CaseIData{e, CoVector{Rational(1 / e.x1), Rational(0)},
                      CoVector{Rational(0), Rational(1 / e.x2)}};
  return d;
}

}  // namespace toricmld
