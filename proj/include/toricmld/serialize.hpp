#pragma once

// JSONL records and table rendering. Rationals are written as "p/q"
// strings so values survive a round trip exactly; keys keep insertion order.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricmld/applications.hpp"
#include "toricmld/enumerate.hpp"

namespace toricmld {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_field(const Json& j, const char* key) {
  require(j.contains(key) && j.at(key).is_string(), std::string("missing rational field '") + key + "'");
  return parse_rational(j.at(key).get<std::string>());
}

template <class V>
Json vec_json(const V& v) {
  return Json::array({to_string(v.x1), to_string(v.x2)});
}

template <class V>
V vec_from(const Json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string(),
          "expected a pair of rational strings, got " + j.dump());
  return V{parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
}

template <class V>
V vec_field(const Json& j, const char* key) {
  require(j.contains(key), std::string("missing field '") + key + "'");
  return vec_from<V>(j.at(key));
}

}  // namespace detail

/// Stable identity of a germ used for resuming sweeps.
inline std::string germ_key(const Germ& g) {
  return to_string(g.lattice) + " " + to_string(g.b1) + "," + to_string(g.b2);
}

inline Json to_json(const Germ& g) {
  Json lat = Json::array();
  for (const auto& b : g.lattice.basis()) lat.push_back(detail::vec_json(b));
  Json j;
  j["lattice"] = lat;
  j["boundary"] = Json::array({to_string(g.b1), to_string(g.b2)});
  j["index"] = to_int64(index(g.lattice));
  if (g.type) {
    j["type"] = Json::array({g.type->r, g.type->w1, g.type->w2});
  } else {
    j["type"] = nullptr;
  }
  j["axes_primitive"] = g.axes_primitive;
  return j;
}

inline Germ germ_from_json(const Json& j) {
  detail::require(j.is_object(), "germ must be a JSON object");
  auto b = detail::vec_field<Point>(j, "boundary");
  if (j.contains("type") && !j.at("type").is_null()) {
    const Json& t = j.at("type");
    detail::require(t.is_array() && t.size() == 3, "type must be [r, w1, w2]");
    QuotientType q{t[0].get<std::int64_t>(), t[1].get<std::int64_t>(), t[2].get<std::int64_t>()};
    Germ g = make_germ(q, b.x1, b.x2);
    if (j.contains("lattice")) {
      detail::require(to_json(g)["lattice"] == j.at("lattice"),
                      "recorded lattice does not match type " + to_string(q));
    }
    return g;
  }
  detail::require(j.contains("lattice") && j.at("lattice").is_array(), "missing germ lattice");
  std::vector<Point> gens;
  for (const auto& row : j.at("lattice")) gens.push_back(detail::vec_from<Point>(row));
  return make_germ(lattice_from_generators(gens), b.x1, b.x2, AxisCheck::Relaxed);
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["case"] = case_name(c);
  if (const auto* a = std::get_if<CertificateA>(&c)) {
    j["m"] = detail::vec_json(a->m);
  } else if (const auto* b = std::get_if<CertificateB>(&c)) {
    j["m1"] = detail::vec_json(b->m1);
    j["m2"] = detail::vec_json(b->m2);
    j["t1"] = to_string(b->t1);
    j["t2"] = to_string(b->t2);
  } else {
    const auto& n = std::get<CertificateNotTLC>(c);
    j["e"] = detail::vec_json(n.e);
    j["value"] = to_string(n.value);
  }
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  detail::require(j.is_object() && j.contains("case"), "certificate must have a 'case'");
  std::string c = j.at("case").get<std::string>();
  if (c == "a") return CertificateA{detail::vec_field<CoVector>(j, "m")};
  if (c == "b") {
    return CertificateB{detail::vec_field<CoVector>(j, "m1"), detail::vec_field<CoVector>(j, "m2"),
                        detail::rational_field(j, "t1"), detail::rational_field(j, "t2")};
  }
  detail::require(c == "not_tlc", "unknown certificate case '" + c + "'");
  return CertificateNotTLC{detail::vec_field<Point>(j, "e"), detail::rational_field(j, "value")};
}

inline Json to_json(const std::vector<SeriesId>& series) {
  Json arr = Json::array();
  for (const auto& s : series) {
    arr.push_back(Json::array({to_int64(numerator_of(s.m.x1)), to_int64(numerator_of(s.m.x2))}));
  }
  return arr;
}

inline std::vector<SeriesId> series_from_json(const Json& j) {
  detail::require(j.is_array(), "series must be an array");
  std::vector<SeriesId> out;
  for (const auto& s : j) {
    detail::require(s.is_array() && s.size() == 2, "series entry must be [m1, m2]");
    out.push_back({CoVector{Rational(s[0].get<std::int64_t>()), Rational(s[1].get<std::int64_t>())}});
  }
  return out;
}

inline Json to_json(const EnumerationRecord& r) {
  Json j;
  j["germ"] = to_json(r.germ);
  j["t"] = to_string(r.t);
  j["mld"] = to_string(r.mld);
  j["certificate"] = to_json(r.certificate);
  j["series"] = to_json(r.series);
  return j;
}

inline EnumerationRecord record_from_json(const Json& j) {
  detail::require(j.is_object() && j.contains("germ") && j.contains("certificate"),
                  "record needs 'germ' and 'certificate'");
  EnumerationRecord r;
  r.germ = germ_from_json(j.at("germ"));
  r.t = detail::rational_field(j, "t");
  r.mld = detail::rational_field(j, "mld");
  r.certificate = certificate_from_json(j.at("certificate"));
  r.series = j.contains("series") ? series_from_json(j.at("series")) : std::vector<SeriesId>{};
  return r;
}

inline Json to_json(const HyperplaneSection& h) {
  Json j;
  j["m"] = detail::vec_json(h.m);
  j["on_boundary"] = h.on_boundary();
  return j;
}

inline Json to_json(const Complement& c) {
  Json j;
  j["n"] = to_string(c.n);
  j["boundary"] = Json::array({to_string(c.b1), to_string(c.b2)});
  j["witness"] = detail::vec_json(c.witness);
  return j;
}

inline Json to_json(const StandardComplement& c) {
  Json j = to_json(c.complement);
  j["s"] = to_string(c.s);
  j["case"] = std::string(1, c.which);
  return j;
}

inline Json to_json(const Dichotomy& d) {
  Json j;
  if (const auto* s = std::get_if<SingleH>(&d)) {
    j["kind"] = "single";
    j["h"] = to_json(s->h);
    j["a"] = to_string(s->a);
  } else {
    const auto& dd = std::get<DoubleH>(d);
    j["kind"] = "double";
    j["h1"] = to_json(dd.h1);
    j["h2"] = to_json(dd.h2);
    j["g1"] = to_string(dd.g1);
    j["g2"] = to_string(dd.g2);
  }
  return j;
}

inline Json to_json(const LawrenceResult& r) {
  Json j;
  if (const auto* c = std::get_if<Contained>(&r)) {
    j["case"] = "contained";
    j["m"] = detail::vec_json(c->m);
  } else if (const auto* e = std::get_if<EqualsIntersection>(&r)) {
    j["case"] = "intersection";
    j["m1"] = detail::vec_json(e->m1);
    j["m2"] = detail::vec_json(e->m2);
    j["k1"] = to_string(e->k1);
    j["k2"] = to_string(e->k2);
  } else {
    j["case"] = "hit";
    j["e"] = detail::vec_json(std::get<TriangleHit>(r).e);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Tables

namespace detail {

inline std::string germ_label(const Germ& g) {
  return g.type ? to_string(*g.type) : to_string(g.lattice);
}

inline std::string certificate_summary(const Certificate& c) {
  if (const auto* a = std::get_if<CertificateA>(&c)) return "m=" + to_string(a->m);
  if (const auto* b = std::get_if<CertificateB>(&c)) {
    return "m1=" + to_string(b->m1) + " m2=" + to_string(b->m2) + " t1=" + to_string(b->t1) +
           " t2=" + to_string(b->t2);
  }
  const auto& n = std::get<CertificateNotTLC>(c);
  return "e=" + to_string(n.e) + " value=" + to_string(n.value);
}

inline std::string series_summary(const std::vector<SeriesId>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += to_string(s[i].m) + "*";
  }
  return out;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string csv_header() { return "index,germ,lattice,b1,b2,mld,case,certificate,series"; }

inline std::string to_csv_row(const EnumerationRecord& r) {
  std::ostringstream os;
  os << to_string(index(r.germ.lattice)) << ',' << detail::csv_quote(detail::germ_label(r.germ))
     << ',' << detail::csv_quote(to_string(r.germ.lattice)) << ',' << to_string(r.germ.b1) << ','
     << to_string(r.germ.b2) << ',' << to_string(r.mld) << ',' << case_name(r.certificate) << ','
     << detail::csv_quote(detail::certificate_summary(r.certificate)) << ','
     << detail::csv_quote(detail::series_summary(r.series));
  return os.str();
}

inline std::string markdown_header() {
  return "| index | germ | B | mld | case | certificate | series |\n"
         "|---|---|---|---|---|---|---|";
}

inline std::string to_markdown_row(const EnumerationRecord& r) {
  std::ostringstream os;
  os << "| " << to_string(index(r.germ.lattice)) << " | " << detail::germ_label(r.germ) << " | ("
     << to_string(r.germ.b1) << "," << to_string(r.germ.b2) << ") | " << to_string(r.mld) << " | "
     << case_name(r.certificate) << " | " << detail::certificate_summary(r.certificate) << " | "
     << detail::series_summary(r.series) << " |";
  return os.str();
}

}  // namespace toricmld
