#pragma once

// Certificate-producing deciders for "mld >= t", the Lawrence-type decider
// for subgroups of Q^2 containing Z^2 that avoid the open triangle
// {x, y > 0, x + y < p/q}, and codimension one series membership.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toricmld/case_analysis.hpp"

namespace toricmld {

// ---------------------------------------------------------------------------
// Certificates for mld >= t

/// A single covector m in M, in the dual cone, with psi - t m in the dual cone.
struct CertificateA {
  CoVector m;
};

/// N = (m1)* intersected with (m2)*, psi = t1 m1 + t2 m2, t1, t2 > 0,
/// t1 + t2 >= t.
struct CertificateB {
  CoVector m1;
  CoVector m2;
  Rational t1;
  Rational t2;
};

/// An interior lattice point e with <psi, e> = value < t.
struct CertificateNotTLC {
  Point e;
  Rational value;
};

using Certificate = std::variant<CertificateA, CertificateB, CertificateNotTLC>;

inline std::string case_name(const Certificate& c) {
  switch (c.index()) {
    case 0: return "a";
    case 1: return "b";
    default: return "not_tlc";
  }
}

/// Decides mld(N, psi) >= t for rank-2 N containing Z^2 and returns the
/// matching certificate.
inline Certificate classify_tlc(const Lattice& n, const CoVector& psi, const Rational& t) {
  detail::require(t > 0, "threshold t must be positive, got " + to_string(t));
  detail::require(!psi.is_zero(), "classify_tlc() needs psi != 0 (B != Sigma)");
  MldResult res = mld(n, psi);
  if (res.value < t) return CertificateNotTLC{res.minimizers.front(), res.value};

  CaseData d = case_analysis(n, psi);
  if (d.gamma >= t) return CertificateA{d.v1};

  detail::ensure(d.case3.has_value(), "gamma < t <= lambda outside case III");
  const CaseIIIData& c3 = *d.case3;
  Rational t2 = (d.lambda - d.gamma) / (1 - c3.alpha);
  Rational t1 = d.lambda - t2;
  return CertificateB{d.v1, c3.v2, t1, t2};
}

inline Certificate classify_tlc(const Germ& g, const Rational& t) {
  return classify_tlc(g.lattice, g.psi(), t);
}

/// Companion entry point for subgroups of any rank. When G misses the open
/// cone and psi is interior, a covector vanishing on G is scaled into a
/// case-a certificate.
inline Certificate classify_tlc_subgroup(const Lattice& g, const CoVector& psi, const Rational& t) {
  detail::require(t > 0, "threshold t must be positive, got " + to_string(t));
  detail::require(!psi.is_zero(), "classify_tlc() needs psi != 0");
  detail::require(in_closed_cone(psi), "psi = " + to_string(psi) + " is outside the dual cone");
  if (g.rank() == 2) return classify_tlc(g, psi, t);

  auto w = interior_witness(g);
  if (auto* ip = std::get_if<InteriorPoint>(&w)) {
    CaseData d = case_analysis_subgroup(g, psi);
    Rational value = pairing(psi, ip->point);
    if (value < t) return CertificateNotTLC{ip->point, value};
    return CertificateA{d.v1};
  }
  const CoVector& m0 = std::get<CoWitness>(w).phi;
  detail::require(in_open_cone(psi),
                  "subgroup misses the open cone and psi is on the boundary of the dual cone");
  Integer k = 1;
  if (m0.x1 > 0) k = std::max(k, ceil_of(Rational(m0.x1 / psi.x1)));
  if (m0.x2 > 0) k = std::max(k, ceil_of(Rational(m0.x2 / psi.x2)));
  return CertificateA{m0 / Rational(Rational(k) * t)};
}

enum class VerifyFailure {
  None,
  ZeroCovector,
  NotInDualCone,
  NotInDualLattice,
  ResidualOutsideCone,
  LinearlyDependent,
  NonPositiveCoefficient,
  CoefficientSumBelowThreshold,
  DecompositionMismatch,
  LatticeMismatch,
  PointNotInLattice,
  PointNotInterior,
  ValueMismatch,
  ValueNotBelowThreshold,
  OutsideBox,
  BoundExceeded,
};

inline std::string to_string(VerifyFailure f) {
  switch (f) {
    case VerifyFailure::None: return "ok";
    case VerifyFailure::ZeroCovector: return "zero covector";
    case VerifyFailure::NotInDualCone: return "covector outside the dual cone";
    case VerifyFailure::NotInDualLattice: return "covector not in the dual lattice";
    case VerifyFailure::ResidualOutsideCone: return "psi - t m outside the dual cone";
    case VerifyFailure::LinearlyDependent: return "covectors are linearly dependent";
    case VerifyFailure::NonPositiveCoefficient: return "coefficient is not positive";
    case VerifyFailure::CoefficientSumBelowThreshold: return "t1 + t2 < t";
    case VerifyFailure::DecompositionMismatch: return "psi != t1 m1 + t2 m2";
    case VerifyFailure::LatticeMismatch: return "lattice differs from the dual of Z m1 + Z m2";
    case VerifyFailure::PointNotInLattice: return "point not in the lattice";
    case VerifyFailure::PointNotInterior: return "point not in the open cone";
    case VerifyFailure::ValueMismatch: return "reported value differs from <psi, e>";
    case VerifyFailure::ValueNotBelowThreshold: return "value is not below the threshold";
    case VerifyFailure::OutsideBox: return "witness outside the box [0, q/p]^2";
    case VerifyFailure::BoundExceeded: return "k1 + k2 exceeds its bound";
  }
  return "?";
}

struct VerifyResult {
  VerifyFailure reason = VerifyFailure::None;
  bool ok() const { return reason == VerifyFailure::None; }
  explicit operator bool() const { return ok(); }
};

namespace detail {

inline bool pairs_integrally(const CoVector& m, const Lattice& g) {
  for (const auto& b : g.basis()) {
    if (!is_integer(pairing(m, b))) return false;
  }
  return true;
}

}  // namespace detail

/// Re-checks a certificate from scratch. For cases a and b this is the easy
/// direction: every interior e in N has <psi, e> >= t.
inline VerifyResult verify_certificate(const Lattice& n, const CoVector& psi, const Rational& t,
                                       const Certificate& cert) {
  using F = VerifyFailure;
  if (const auto* a = std::get_if<CertificateA>(&cert)) {
    if (a->m.is_zero()) return {F::ZeroCovector};
    if (!in_closed_cone(a->m)) return {F::NotInDualCone};
    if (!detail::pairs_integrally(a->m, n)) return {F::NotInDualLattice};
    if (!in_closed_cone(psi - t * a->m)) return {F::ResidualOutsideCone};
    return {};
  }
  if (const auto* b = std::get_if<CertificateB>(&cert)) {
    if (!in_closed_cone(b->m1) || !in_closed_cone(b->m2)) return {F::NotInDualCone};
    if (determinant(b->m1, b->m2) == 0) return {F::LinearlyDependent};
    if (b->t1 <= 0 || b->t2 <= 0) return {F::NonPositiveCoefficient};
    if (b->t1 + b->t2 < t) return {F::CoefficientSumBelowThreshold};
    if (b->t1 * b->m1 + b->t2 * b->m2 != psi) return {F::DecompositionMismatch};
    if (dual(lattice_from_generators({b->m1, b->m2})) != n) return {F::LatticeMismatch};
    return {};
  }
  const auto& c = std::get<CertificateNotTLC>(cert);
  if (!contains(n, c.e)) return {F::PointNotInLattice};
  if (!in_open_cone(c.e)) return {F::PointNotInterior};
  if (pairing(psi, c.e) != c.value) return {F::ValueMismatch};
  if (!(c.value < t)) return {F::ValueNotBelowThreshold};
  return {};
}

inline VerifyResult verify_certificate(const Germ& g, const Rational& t, const Certificate& cert) {
  return verify_certificate(g.lattice, g.psi(), t, cert);
}

// ---------------------------------------------------------------------------
// Subgroups avoiding the triangle {x, y > 0, x + y < p/q}

/// G lies in m* for an integral m in [0, q/p]^2.
struct Contained {
  CoVector m;
};

/// G = (m1)* intersected with (m2)*, with k1 + k2 <= 2q and
/// (k1 m1 + k2 m2) / (k1 + k2) in [0, q/p]^2.
struct EqualsIntersection {
  CoVector m1;
  CoVector m2;
  Integer k1;
  Integer k2;
};

/// A point of G inside the triangle.
struct TriangleHit {
  Point e;
};

using LawrenceResult = std::variant<Contained, EqualsIntersection, TriangleHit>;

namespace detail {

struct Fraction {
  std::int64_t p;
  std::int64_t q;
};

inline Fraction reduced(std::int64_t p, std::int64_t q) {
  require(p > 0 && q > 0, "p and q must be positive integers");
  std::int64_t g = std::gcd(p, q);
  return {p / g, q / g};
}

}  // namespace detail

/// Decides whether G (rank 2, containing Z^2) avoids the open triangle
/// {x, y > 0, x + y < p/q}. p/q is taken in lowest terms.
inline LawrenceResult lawrence(const Lattice& g, std::int64_t p_in, std::int64_t q_in) {
  auto [p, q] = detail::reduced(p_in, q_in);
  detail::require(contains_standard_lattice(g), "lawrence() needs a rank-2 lattice containing Z^2");
  const CoVector psi{1, 1};
  const Rational t(p, q);
  MldResult res = mld(g, psi);
  if (res.value < t) return TriangleHit{res.minimizers.front()};

  CaseData d = case_analysis(g, psi);
  const Rational box(q, p);
  if (d.gamma >= t) {
    detail::ensure(is_integral(d.v1) && d.v1.x1 <= box && d.v1.x2 <= box,
                   "case-a witness is not an integral point of [0, q/p]^2");
    return Contained{d.v1};
  }

  detail::ensure(d.case3.has_value(), "gamma < p/q <= lambda outside case III");
  const CaseIIIData& c3 = *d.case3;
  Rational inv_gamma = 1 / d.gamma;
  detail::ensure(is_integer(inv_gamma), "1/gamma is not an integer for psi = (1,1)");
  Integer l = numerator_of(inv_gamma);
  Rational l_alpha = Rational(l) * c3.alpha;
  detail::ensure(is_integer(l_alpha), "l alpha is not an integer for psi = (1,1)");
  Integer k1 = q - p * numerator_of(l_alpha);
  Integer k2 = l * p - q;
  detail::ensure(k1 > 0 && k2 > 0, "k1 or k2 is not positive");
  if (p == 1 && q > 1 && k1 + k2 == 2 * q) {
    k1 = 1;
    k2 = 1;
  }
  const CoVector avg = (Rational(k1) * d.v1 + Rational(k2) * c3.v2) / Rational(k1 + k2);
  detail::ensure(in_closed_cone(avg) && avg.x1 <= box && avg.x2 <= box,
                 "(k1 m1 + k2 m2)/(k1 + k2) is outside [0, q/p]^2");
  return EqualsIntersection{d.v1, c3.v2, k1, k2};
}

/// Independent check of every invariant of a Lawrence result.
inline VerifyResult verify_lawrence(const Lattice& g, std::int64_t p_in, std::int64_t q_in,
                                    const LawrenceResult& result) {
  using F = VerifyFailure;
  auto [p, q] = detail::reduced(p_in, q_in);
  const Rational box(q, p);
  if (const auto* c = std::get_if<Contained>(&result)) {
    if (c->m.is_zero()) return {F::ZeroCovector};
    if (!is_integral(c->m) || !in_closed_cone(c->m)) return {F::NotInDualCone};
    if (c->m.x1 > box || c->m.x2 > box) return {F::OutsideBox};
    if (!detail::pairs_integrally(c->m, g)) return {F::NotInDualLattice};
    return {};
  }
  if (const auto* e = std::get_if<EqualsIntersection>(&result)) {
    if (!is_integral(e->m1) || !is_integral(e->m2) || !in_closed_cone(e->m1) ||
        !in_closed_cone(e->m2))
      return {F::NotInDualCone};
    if (determinant(e->m1, e->m2) == 0) return {F::LinearlyDependent};
    if (e->k1 < 1 || e->k2 < 1) return {F::NonPositiveCoefficient};
    if (e->k1 + e->k2 > 2 * q) return {F::BoundExceeded};
    if (p == 1 && q > 1 && e->k1 + e->k2 >= 2 * q) return {F::BoundExceeded};
    const Rational s(e->k1 + e->k2);
    CoVector avg = (Rational(e->k1) * e->m1 + Rational(e->k2) * e->m2) / s;
    if (avg.x1 > box || avg.x2 > box) return {F::OutsideBox};
    if (dual(lattice_from_generators({e->m1, e->m2})) != g) return {F::LatticeMismatch};
    return {};
  }
  const auto& h = std::get<TriangleHit>(result);
  if (!contains(g, h.e)) return {F::PointNotInLattice};
  if (!in_open_cone(h.e)) return {F::PointNotInterior};
  if (!(h.e.x1 + h.e.x2 < Rational(p, q))) return {F::ValueNotBelowThreshold};
  return {};
}

/// Largest integer multiple of the primitive direction of m inside
/// [0, bound]^2. The example lists report series under these
/// representatives, e.g. (1,1)* as (2,2)* for bound 2.
inline CoVector box_maximal(const CoVector& m, const Rational& bound) {
  detail::require(!m.is_zero() && in_closed_cone(m), "box_maximal() needs a nonzero m >= 0");
  CoVector prim = primitive_integer_direction(m);
  Rational top = prim.x1 > prim.x2 ? prim.x1 : prim.x2;
  Integer k = floor_of(Rational(bound / top));
  detail::require(k >= 1, to_string(m) + " has no multiple inside [0, " + to_string(bound) + "]^2");
  return Rational(k) * prim;
}

// ---------------------------------------------------------------------------
// Codimension one series

/// Integral m with <m, N> in Z; the germ lies on the series m1 x1 + m2 x2 in Z.
struct SeriesId {
  CoVector m;
  friend bool operator==(const SeriesId&, const SeriesId&) = default;
  friend bool operator<(const SeriesId& a, const SeriesId& b) { return a.m < b.m; }
};

/// All integral m != 0 in M with m_i <= floor(psi_i / t), in lexicographic
/// order. For B = 0 the box is [0, floor(1/t)]^2; in general the bound is
/// exactly psi - t m in the dual cone, i.e. mld(X, B + tH) >= 0.
inline std::vector<SeriesId> series_membership(const Germ& g, const Rational& t) {
  detail::require(t > 0, "threshold t must be positive, got " + to_string(t));
  const CoVector psi = g.psi();
  Integer top1 = floor_of(Rational(psi.x1 / t));
  Integer top2 = floor_of(Rational(psi.x2 / t));
  std::vector<SeriesId> out;
  for (Integer a = 0; a <= top1; ++a) {
    for (Integer b = 0; b <= top2; ++b) {
      if (a == 0 && b == 0) continue;
      CoVector m{Rational(a), Rational(b)};
      if (detail::pairs_integrally(m, g.lattice)) out.push_back({m});
    }
  }
  return out;
}

/// Which clause of the log-case complement characterization applies.
enum class SeriesCriterion {
  WithinInverse,  // n <= 1/t
  CeilingBand,    // 1/t < n <= ceil(1/t) and B_n >= (1 - 1/(nt)) Sigma + B/(nt)
  Rejected,
};

struct SeriesLogResult {
  Integer n;
  Rational bn1;
  Rational bn2;
  SeriesCriterion criterion = SeriesCriterion::Rejected;
  bool accepted() const { return criterion != SeriesCriterion::Rejected; }
};

/// For an integral witness m in M: the least n >= 1 with n a_i >= m_i
/// (a_i = 1 - b_i), the boundary B_n = Sigma - m/n, and whether the
/// complement criterion accepts it for threshold t.
inline SeriesLogResult series_certificate_log(const Germ& g, const CoVector& m, const Rational& t) {
  detail::require(t > 0, "threshold t must be positive, got " + to_string(t));
  detail::require(is_integral(m) && in_closed_cone(m) && !m.is_zero(),
                  "witness " + to_string(m) + " must be a nonzero integral covector >= 0");
  detail::require(detail::pairs_integrally(m, g.lattice), "witness " + to_string(m) + " is not in M");
  const CoVector a = g.psi();
  Integer n = 1;
  for (auto [ai, mi] : {std::pair{a.x1, m.x1}, std::pair{a.x2, m.x2}}) {
    if (mi == 0) continue;
    detail::require(ai > 0, "witness " + to_string(m) + " has no n with n a >= m");
    n = std::max(n, ceil_of(Rational(mi / ai)));
  }
  SeriesLogResult out;
  out.n = n;
  const Rational nr(n);
  out.bn1 = 1 - m.x1 / nr;
  out.bn2 = 1 - m.x2 / nr;
  const Rational inv_t = 1 / t;
  if (nr <= inv_t) {
    out.criterion = SeriesCriterion::WithinInverse;
  } else if (n <= ceil_of(inv_t)) {
    const Rational w = 1 / (nr * t);
    bool ok = out.bn1 >= (1 - w) + w * g.b1 && out.bn2 >= (1 - w) + w * g.b2;
    out.criterion = ok ? SeriesCriterion::CeilingBand : SeriesCriterion::Rejected;
  }
  return out;
}

}  // namespace toricmld
