#pragma once

// Deterministic sweeps over canonical germ representatives.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "toricmld/classify.hpp"

namespace toricmld {

enum class EnumerationMode { Cyclic, AllSuperlattices };

struct BoundaryPair {
  Rational b1;
  Rational b2;
};

struct EnumerationSpec {
  EnumerationMode mode = EnumerationMode::Cyclic;
  std::int64_t bound = 1;  // r_max or index_max
  std::vector<BoundaryPair> boundaries{{Rational(0), Rational(0)}};
  Rational t{1};
  bool include_not_tlc = false;
  unsigned workers = 1;
  std::size_t chunk_size = 512;
  /// Candidates for which this returns true are dropped before classification.
  std::function<bool(const Germ&)> skip;
};

struct EnumerationRecord {
  Germ germ;
  Rational t;
  Rational mld;
  Certificate certificate;
  std::vector<SeriesId> series;
};

namespace detail {

inline bool germ_less(const Germ& a, const Germ& b) {
  if (a.lattice != b.lattice) return a.lattice < b.lattice;
  if (a.b1 != b.b1) return a.b1 < b.b1;
  return a.b2 < b.b2;
}

inline bool same_germ(const Germ& a, const Germ& b) {
  return a.lattice == b.lattice && a.b1 == b.b1 && a.b2 == b.b2;
}

}  // namespace detail

/// The coordinate-swap orbit representative with the smaller (lattice, b1, b2).
inline Germ canonical_germ(const Germ& g) {
  Germ s = g.swapped();
  return detail::germ_less(s, g) ? s : g;
}

/// Index-n sublattices of the dual plane Z^2 as canonical rows
/// (p1, x), (0, p2) with p1 p2 = n, 0 <= x < p2, in order of (p1, x).
inline std::vector<DualLattice> sublattices_of_index(std::int64_t n) {
  std::vector<DualLattice> out;
  for (std::int64_t p1 = 1; p1 <= n; ++p1) {
    if (n % p1 != 0) continue;
    std::int64_t p2 = n / p1;
    for (std::int64_t x = 0; x < p2; ++x) {
      out.push_back(lattice_from_generators(
          {CoVector{Rational(p1), Rational(x)}, CoVector{Rational(0), Rational(p2)}}));
    }
  }
  return out;
}

/// All superlattices of Z^2 of index n, as duals of index-n sublattices.
inline std::vector<Lattice> superlattices_of_index(std::int64_t n) {
  std::vector<Lattice> out;
  for (const auto& m : sublattices_of_index(n)) out.push_back(dual(m));
  return out;
}

/// Canonical candidates of a sweep, deduplicated and sorted by
/// (index, lattice, b1, b2).
inline std::vector<Germ> enumeration_candidates(const EnumerationSpec& spec) {
  detail::require(spec.bound >= 1, "enumeration bound must be at least 1");
  detail::require(!spec.boundaries.empty(), "enumeration needs at least one boundary pair");
  std::vector<std::pair<std::int64_t, Germ>> keyed;
  auto add = [&](std::int64_t idx, const Germ& g) { keyed.emplace_back(idx, canonical_germ(g)); };

  for (std::int64_t n = 1; n <= spec.bound; ++n) {
    if (spec.mode == EnumerationMode::Cyclic) {
      std::vector<QuotientType> types;
      if (n == 1) {
        types.push_back({1, 0, 0});
      } else {
        for (std::int64_t w = 1; w < n; ++w) {
          if (std::gcd(w, n) == 1) types.push_back({n, 1, w});
        }
      }
      for (const auto& q : types) {
        Germ base = make_germ(q);
        for (const auto& b : spec.boundaries) add(n, base.with_boundary(b.b1, b.b2));
      }
    } else {
      for (const auto& l : superlattices_of_index(n)) {
        Germ base = make_germ(l, 0, 0, AxisCheck::Relaxed);
        for (const auto& b : spec.boundaries) add(n, base.with_boundary(b.b1, b.b2));
      }
    }
  }

  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return detail::germ_less(a.second, b.second);
  });
  std::vector<Germ> out;
  for (auto& [idx, g] : keyed) {
    if (!out.empty() && detail::same_germ(out.back(), g)) continue;
    if (spec.skip && spec.skip(g)) continue;
    out.push_back(std::move(g));
  }
  return out;
}

/// Classifies one germ and self-checks the certificate. Returns nothing for
/// germs below the threshold unless include_not_tlc is set.
inline std::optional<EnumerationRecord> classify_germ(const Germ& g, const Rational& t,
                                                      bool include_not_tlc) {
  EnumerationRecord rec;
  rec.germ = g;
  rec.t = t;
  MldResult m = mld(g);
  rec.mld = m.value;
  if (g.psi().is_zero()) {
    rec.certificate = CertificateNotTLC{m.minimizers.front(), m.value};
  } else {
    rec.certificate = classify_tlc(g, t);
    VerifyResult v = verify_certificate(g, t, rec.certificate);
    detail::ensure(v.ok(), "certificate for " + to_string(g) + " failed: " + to_string(v.reason));
  }
  bool below = std::holds_alternative<CertificateNotTLC>(rec.certificate);
  if (below && !include_not_tlc) return std::nullopt;
  rec.series = series_membership(g, t);
  return rec;
}

/// Streams records in canonical order. Candidates are processed in chunks;
/// within a chunk the workers take interleaved slots, and the chunk is
/// emitted in order once all of them finish, so output does not depend on
/// the worker count.
inline void enumerate_germs(const EnumerationSpec& spec,
                            const std::function<void(const EnumerationRecord&)>& sink) {
  detail::require(spec.t > 0, "threshold t must be positive, got " + to_string(spec.t));
  std::vector<Germ> candidates = enumeration_candidates(spec);
  const unsigned workers = std::max(1u, spec.workers);
  const std::size_t chunk = std::max<std::size_t>(1, spec.chunk_size);

  for (std::size_t start = 0; start < candidates.size(); start += chunk) {
    std::size_t stop = std::min(candidates.size(), start + chunk);
    std::vector<std::optional<EnumerationRecord>> slots(stop - start);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned k) {
      try {
        for (std::size_t i = start + k; i < stop; i += workers) {
          slots[i - start] = classify_germ(candidates[i], spec.t, spec.include_not_tlc);
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work, k);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (auto& s : slots) {
      if (s) sink(*s);
    }
  }
}

inline std::vector<EnumerationRecord> enumerate_germs(const EnumerationSpec& spec) {
  std::vector<EnumerationRecord> out;
  enumerate_germs(spec, [&](const EnumerationRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace toricmld
