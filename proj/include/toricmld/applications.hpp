#pragma once

// Geometric consequences of the case analysis: germs with mld >= 1,
// invariant hyperplane sections through P, and complements.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "toricmld/classify.hpp"
#include "toricmld/oracle.hpp"

namespace toricmld {

/// H = div(chi^m) for m in M, m >= 0, m != 0. Multiplicities along E1, E2
/// are (m1, m2).
struct HyperplaneSection {
  CoVector m;
  /// One multiplicity is zero, so H contains only one of E1, E2.
  bool on_boundary() const { return on_cone_boundary(m); }
  friend bool operator==(const HyperplaneSection&, const HyperplaneSection&) = default;
};

namespace detail {

inline void require_section(const Germ& g, const HyperplaneSection& h) {
  require(!h.m.is_zero(), "hyperplane section needs m != 0");
  require(in_closed_cone(h.m), "m = " + to_string(h.m) + " is outside the dual cone");
  require(pairs_integrally(h.m, g.lattice), "m = " + to_string(h.m) + " is not in M");
}

inline bool is_standard_coefficient(const Rational& b) {
  if (b == 0 || b == 1) return true;
  if (b < 0 || b > 1) return false;
  return is_integer(Rational(1 / (1 - b)));
}

inline Germ germ_with_psi(const Germ& g, const CoVector& psi) {
  ensure(in_closed_cone(psi), "boundary exceeds Sigma: psi = " + to_string(psi));
  Germ h = g;
  h.b1 = 1 - psi.x1;
  h.b2 = 1 - psi.x2;
  ensure(h.b1 >= 0 && h.b2 >= 0, "boundary below zero: psi = " + to_string(psi));
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// mld >= 1

struct ProductCase {
  Rational a;  // 2 - b1 - b2
};
/// N of type 1/(l+1)(l,1), B = 0, a = 1.
struct QuotientCase {
  std::int64_t l;
};
struct NotApplicable {};

using MldGeOne = std::variant<ProductCase, QuotientCase, NotApplicable>;

/// Identifies which of the two families a germ with mld >= 1 belongs to.
/// Germs with a non-primitive axis are rejected.
inline MldGeOne classify_mld_ge_one(const Germ& g) {
  detail::require(g.axes_primitive, "classify_mld_ge_one() needs primitive axes");
  Rational a = mld(g).value;
  if (a < 1) return NotApplicable{};
  Integer r = index(g.lattice);
  if (r == 1) {
    detail::ensure(g.b1 + g.b2 <= 1, "Z^2 with mld >= 1 but b1 + b2 > 1");
    return ProductCase{Rational(2 - g.b1 - g.b2)};
  }
  std::int64_t rr = to_int64(r);
  detail::ensure(g.b1 == 0 && g.b2 == 0,
                 to_string(g) + " has mld >= 1 and index > 1 with B != 0");
  detail::ensure(g.lattice == lattice_from_quotient_type(rr, rr - 1, 1),
                 to_string(g) + " has mld >= 1 but is not of type 1/(l+1)(l,1)");
  detail::ensure(a == 1, "type 1/(l+1)(l,1) with mld != 1");
  return QuotientCase{rr - 1};
}

// ---------------------------------------------------------------------------
// Hyperplane sections

/// lct of H with respect to (X, B) at P: the largest s with B + sH <= Sigma,
/// i.e. min_i (1 - b_i) / m_i.
inline Rational lct_invariant(const Germ& g, const HyperplaneSection& h) {
  detail::require_section(g, h);
  return gamma_of(h.m, g.psi()).value();
}

struct SingleH {
  HyperplaneSection h;
  Rational a;
};

struct DoubleH {
  HyperplaneSection h1;
  HyperplaneSection h2;
  Rational g1;
  Rational g2;
};

using Dichotomy = std::variant<SingleH, DoubleH>;

/// Either mld(X, B + aH) = 0 for one H, or B + g1 H1 + g2 H2 = Sigma with
/// g1 + g2 = a.
inline Dichotomy hyperplane_dichotomy(const Germ& g) {
  Rational a = mld(g).value;
  detail::require(a > 0, "hyperplane_dichotomy() needs mld > 0");
  CaseData d = case_analysis(g);
  const CoVector psi = g.psi();
  if (d.gamma == a) {
    Germ cut = detail::germ_with_psi(g, psi - a * d.v1);
    detail::ensure(oracle::mld_oracle(cut).value == 0, "mld(X, B + aH) != 0");
    return SingleH{{d.v1}, a};
  }
  detail::ensure(d.case3.has_value(), "gamma < mld outside case III");
  const CaseIIIData& c3 = *d.case3;
  Rational g2 = (a - d.gamma) / (1 - c3.alpha);
  Rational g1 = a - g2;
  detail::ensure(g1 > 0 && g2 > 0, "non-positive coefficient in the two-section case");
  detail::ensure(g1 * d.v1 + g2 * c3.v2 == psi, "B + g1 H1 + g2 H2 != Sigma");
  return DoubleH{{d.v1}, {c3.v2}, g1, g2};
}

/// H with mld(X, B + (a/2) H) >= 0: the section carrying the larger
/// coefficient, ties going to the lexicographically smaller covector.
inline HyperplaneSection half_mld_section(const Germ& g) {
  Dichotomy d = hyperplane_dichotomy(g);
  HyperplaneSection h;
  Rational a;
  if (const auto* s = std::get_if<SingleH>(&d)) {
    h = s->h;
    a = s->a;
  } else {
    const auto& dd = std::get<DoubleH>(d);
    a = dd.g1 + dd.g2;
    bool first = dd.g1 > dd.g2 || (dd.g1 == dd.g2 && dd.h1.m < dd.h2.m);
    h = first ? dd.h1 : dd.h2;
  }
  CoVector rest = g.psi() - (a / 2) * h.m;
  detail::ensure(in_closed_cone(rest), "B + (a/2) H exceeds Sigma");
  detail::ensure(oracle::mld_oracle(detail::germ_with_psi(g, rest)).value >= 0,
                 "mld(X, B + (a/2) H) < 0");
  return h;
}

// ---------------------------------------------------------------------------
// Complements

/// B <= B_n <= Sigma with n (K + B_n) ~ 0; witness = n (1 - B_n) in M.
struct Complement {
  Integer n;
  Rational b1;
  Rational b2;
  CoVector witness;
};

namespace detail {

inline Complement complement_from_witness(const Integer& n, const CoVector& witness) {
  const Rational nr(n);
  return Complement{n, Rational(1 - witness.x1 / nr), Rational(1 - witness.x2 / nr), witness};
}

// Type invariants shared by both constructions.
inline void check_complement(const Germ& g, const Complement& c) {
  ensure(c.n >= 1, "complement index n < 1");
  ensure(c.b1 >= g.b1 && c.b2 >= g.b2, "B_n is not >= B");
  ensure(c.b1 <= 1 && c.b2 <= 1, "B_n is not <= Sigma");
  const Rational nr(c.n);
  CoVector w{Rational(nr * (1 - c.b1)), Rational(nr * (1 - c.b2))};
  ensure(w == c.witness, "witness differs from n (1 - B_n)");
  ensure(is_integral(w) && pairs_integrally(w, g.lattice), "n (K + B_n) is not principal");
}

}  // namespace detail

struct StandardComplement {
  Complement complement;
  Integer s;
  char which = 'a';  // 'a': gamma >= p/q, 'b': otherwise
};

/// For standard coefficients and mld >= p/q: B_{qs} with 1 <= s <= 2q/p,
/// qs (K + B_{qs}) ~ 0 and mld(X, B_{qs}) >= p/q.
inline StandardComplement complement_standard(const Germ& g, std::int64_t p, std::int64_t q) {
  detail::require(p > 0 && q > 0, "p and q must be positive integers");
  detail::require(detail::is_standard_coefficient(g.b1) && detail::is_standard_coefficient(g.b2),
                  "boundary " + to_string(g) + " does not have standard coefficients");
  const Rational t(p, q);
  const Rational a = mld(g).value;
  detail::require(a >= t, "mld = " + to_string(a) + " is below p/q = " + to_string(t));
  detail::require(!g.psi().is_zero(), "complement_standard() needs B != Sigma");

  CaseData d = case_analysis(g);
  StandardComplement out;
  if (d.gamma >= t) {
    out.which = 'a';
    out.s = 1;
    out.complement = detail::complement_from_witness(q, Rational(p) * d.v1);
  } else {
    detail::ensure(d.case3.has_value(), "gamma < p/q <= mld outside case III");
    const CaseIIIData& c3 = *d.case3;
    Rational inv_gamma = 1 / d.gamma;
    detail::ensure(is_integer(inv_gamma), "1/gamma is not an integer for standard coefficients");
    Integer l = numerator_of(inv_gamma);
    Rational l_alpha = Rational(l) * c3.alpha;
    detail::ensure(is_integer(l_alpha), "l alpha is not an integer for standard coefficients");
    Integer la = numerator_of(l_alpha);
    Integer s = l - la;
    Integer z1 = q - p * la;
    Integer z2 = l * p - q;
    detail::ensure(z1 > 0 && z2 > 0, "z1 or z2 is not positive");
    out.which = 'b';
    out.s = s;
    out.complement =
        detail::complement_from_witness(s * q, Rational(z1) * d.v1 + Rational(z2) * c3.v2);
  }
  detail::ensure(out.s >= 1 && Rational(out.s) <= Rational(2 * q, p), "s is outside [1, 2q/p]");
  detail::ensure(out.complement.n == out.s * q, "n != qs");
  detail::check_complement(g, out.complement);
  Rational m = oracle::mld_oracle(g, out.complement.b1, out.complement.b2).value;
  detail::ensure(m >= t, "mld(X, B_qs) = " + to_string(m) + " < p/q");
  return out;
}

struct BoundedComplementOptions {
  /// Also demand B_n >= floor(B) + floor((n+1){B})/n and n <= 2/a.
  bool floor_filter = false;
};

/// First (n, m) in lexicographic order with 1 <= n <= ceil(2/a), m in M,
/// 0 <= m <= n psi, m != 0, and mld(X, Sigma - m/n) > 0.
inline Complement bounded_complement(const Germ& g, BoundedComplementOptions opts = {}) {
  const Rational a = mld(g).value;
  detail::require(a > 0, "bounded_complement() needs mld > 0");
  const CoVector psi = g.psi();
  const DualLattice m_lattice = dual(g.lattice);
  const Integer n_max = ceil_of(Rational(2 / a));

  auto floor_ok = [&](const Integer& n, const Complement& c) {
    if (!opts.floor_filter) return true;
    if (Rational(n) > 2 / a) return false;
    auto lower = [&](const Rational& b) {
      Rational fl(floor_of(b));
      return fl + Rational(floor_of(Rational((Rational(n) + 1) * (b - fl)))) / Rational(n);
    };
    return c.b1 >= lower(g.b1) && c.b2 >= lower(g.b2);
  };

  for (Integer n = 1; n <= n_max; ++n) {
    std::optional<Complement> hit;
    const Rational nr(n);
    for_each_in_box(m_lattice, Rational(nr * psi.x1), Rational(nr * psi.x2),
                    [&](const CoVector& m) {
                      if (hit || m.is_zero()) return;
                      Complement c = detail::complement_from_witness(n, m);
                      if (!floor_ok(n, c)) return;
                      if (oracle::mld_oracle(g, c.b1, c.b2).value > 0) hit = c;
                    });
    if (hit) {
      detail::check_complement(g, *hit);
      return *hit;
    }
  }
  throw TheoremViolation("no complement with n <= ceil(2/a) for " + to_string(g));
}

}  // namespace toricmld
