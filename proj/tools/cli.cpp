#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "toricmld.hpp"

namespace toricmld::cli {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::int64_t parse_int(const std::string& s) {
  auto r = try_parse_rational(s);
  detail::require(r && is_integer(*r), "expected an integer, got '" + s + "'");
  return to_int64(numerator_of(*r));
}

QuotientType parse_type(const std::string& s) {
  auto parts = split(s, ',');
  detail::require(parts.size() == 3, "--type expects r,w1,w2, got '" + s + "'");
  return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2])};
}

BoundaryPair parse_boundary(const std::string& s) {
  auto parts = split(s, ',');
  detail::require(parts.size() == 2, "boundary expects b1,b2, got '" + s + "'");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

Germ germ_from_options(const std::string& type, const std::string& boundary) {
  BoundaryPair b{Rational(0), Rational(0)};
  if (!boundary.empty()) b = parse_boundary(boundary);
  QuotientType q = parse_type(type);
  if (q.r == 1) q = {1, 0, 0};
  return make_germ(q, b.b1, b.b2);
}

std::vector<BoundaryPair> boundary_set(const std::string& name, const std::string& file) {
  if (name == "zero") return {{Rational(0), Rational(0)}};
  if (name == "standard") {
    const std::vector<Rational> coeffs{Rational(0), Rational(1, 2), Rational(2, 3), Rational(3, 4),
                                       Rational(1)};
    std::vector<BoundaryPair> out;
    for (const auto& x : coeffs) {
      for (const auto& y : coeffs) out.push_back({x, y});
    }
    return out;
  }
  detail::require(name == "file", "--boundary-set must be zero, standard or file");
  detail::require(!file.empty(), "--boundary-set file needs --boundary-file");
  std::ifstream in(file);
  detail::require(in.good(), "cannot read boundary file '" + file + "'");
  std::vector<BoundaryPair> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_boundary(line));
  }
  detail::require(!out.empty(), "boundary file '" + file + "' is empty");
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("TORICMLD_WORKERS")) {
    auto r = try_parse_rational(env);
    if (r && is_integer(*r) && *r >= 1) return static_cast<unsigned>(to_int64(numerator_of(*r)));
  }
  return 1;
}

// Re-checks one record against the oracle. Returns an empty string on success.
std::string check_record(const EnumerationRecord& r) {
  const Germ& g = r.germ;
  Rational engine = mld(g).value;
  oracle::OracleMld brute = oracle::mld_oracle(g);
  if (engine != brute.value) return "engine mld " + to_string(engine) + " != oracle " + to_string(brute.value);
  if (r.mld != brute.value) return "recorded mld " + to_string(r.mld) + " != oracle " + to_string(brute.value);
  bool tlc = oracle::tlc_oracle(g.lattice, g.psi(), r.t);
  bool not_tlc = std::holds_alternative<CertificateNotTLC>(r.certificate);
  if (tlc == not_tlc) return "certificate case disagrees with the oracle";
  VerifyResult v = verify_certificate(g, r.t, r.certificate);
  if (!v.ok()) return "certificate rejected: " + to_string(v.reason);
  if (series_membership(g, r.t) != r.series) return "series list differs from recomputation";
  return {};
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  detail::require(in.good(), "cannot read '" + path + "'");
  std::string line;
  std::size_t line_no = 0, checked = 0, failed = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
    }
    EnumerationRecord r = record_from_json(j);
    if (to_json(r) != j) {
      err << "line " << line_no << ": record does not round-trip\n";
      ++failed;
    } else if (std::string why = check_record(r); !why.empty()) {
      err << "line " << line_no << " (" << germ_key(r.germ) << "): " << why << "\n";
      ++failed;
    }
    ++checked;
  }
  out << "verified " << checked - failed << "/" << checked << " records\n";
  return failed == 0 ? kOk : kVerificationFailed;
}

std::set<std::string> existing_keys(const std::string& path) {
  std::set<std::string> keys;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    keys.insert(germ_key(germ_from_json(Json::parse(line).at("germ"))));
  }
  return keys;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal log discrepancies of toric surface germs"};
  app.require_subcommand(1);

  std::string type, boundary, t_text, in_path, out_path, boundary_name = "zero", boundary_file;
  std::string mode = "cyclic", format = "jsonl";
  std::int64_t p = 1, q = 1, r_max = 0, index_max = 0;
  unsigned workers = default_workers();
  bool include_not_tlc = false, resume = false;

  auto* mld_cmd = app.add_subcommand("mld", "mld and its minimizers");
  mld_cmd->add_option("--type", type, "cyclic type r,w1,w2")->required();
  mld_cmd->add_option("--boundary", boundary, "boundary coefficients b1,b2");

  auto* classify_cmd = app.add_subcommand("classify", "certificate for mld >= t");
  classify_cmd->add_option("--type", type, "cyclic type r,w1,w2")->required();
  classify_cmd->add_option("--boundary", boundary, "boundary coefficients b1,b2");
  classify_cmd->add_option("--t", t_text, "threshold p/q")->required();

  auto* lawrence_cmd = app.add_subcommand("lawrence", "subgroups avoiding x + y < p/q");
  auto* type_opt = lawrence_cmd->add_option("--type", type, "cyclic type r,w1,w2");
  auto* idx_opt = lawrence_cmd->add_option("--index-max", index_max, "sweep superlattices up to this index");
  type_opt->excludes(idx_opt);
  lawrence_cmd->add_option("--p", p)->required();
  lawrence_cmd->add_option("--q", q)->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "sweep canonical germs");
  enum_cmd->add_option("--mode", mode)->check(CLI::IsMember({"cyclic", "all"}));
  enum_cmd->add_option("--r-max", r_max, "largest cyclic order");
  enum_cmd->add_option("--index-max", index_max, "largest superlattice index");
  enum_cmd->add_option("--t", t_text, "threshold p/q")->required();
  enum_cmd->add_option("--boundary-set", boundary_name)->check(CLI::IsMember({"zero", "standard", "file"}));
  enum_cmd->add_option("--boundary-file", boundary_file, "lines of b1,b2");
  enum_cmd->add_option("--out", out_path, "output file (default stdout)");
  enum_cmd->add_option("--format", format)->check(CLI::IsMember({"jsonl", "csv", "markdown"}));
  enum_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
  enum_cmd->add_flag("--include-not-tlc", include_not_tlc, "also emit germs with mld < t");
  enum_cmd->add_flag("--resume", resume, "skip germs already in --out (jsonl)");

  auto* comp_cmd = app.add_subcommand("complement", "complements and hyperplane sections");
  comp_cmd->add_option("--type", type, "cyclic type r,w1,w2")->required();
  comp_cmd->add_option("--boundary", boundary, "boundary coefficients b1,b2");
  comp_cmd->add_option("--p", p)->required();
  comp_cmd->add_option("--q", q)->required();

  auto* verify_cmd = app.add_subcommand("verify", "re-check a JSONL file with the oracle");
  verify_cmd->add_option("--in", in_path, "results file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (mld_cmd->parsed()) {
      Germ g = germ_from_options(type, boundary);
      MldResult m = mld(g);
      out << to_string(m.value) << "\n";
      for (std::size_t i = 0; i < m.minimizers.size(); ++i) {
        out << (i ? " " : "") << to_string(m.minimizers[i]);
      }
      out << "\n";
      return kOk;
    }
    if (classify_cmd->parsed()) {
      Germ g = germ_from_options(type, boundary);
      Rational t = parse_rational(t_text);
      detail::require(t > 0, "--t must be positive");
      auto rec = classify_germ(g, t, true);
      out << to_json(*rec).dump() << "\n";
      return kOk;
    }
    if (lawrence_cmd->parsed()) {
      auto one = [&](const Lattice& l) {
        LawrenceResult res = lawrence(l, p, q);
        VerifyResult v = verify_lawrence(l, p, q, res);
        detail::ensure(v.ok(), "lawrence result for " + to_string(l) + " failed: " + to_string(v.reason));
        Json j;
        j["lattice"] = to_json(make_germ(l, 0, 0, AxisCheck::Relaxed))["lattice"];
        j["result"] = to_json(res);
        out << j.dump() << "\n";
      };
      if (!type.empty()) {
        one(germ_from_options(type, "").lattice);
      } else {
        detail::require(index_max >= 1, "lawrence needs --type or --index-max");
        for (std::int64_t n = 1; n <= index_max; ++n) {
          for (const auto& l : superlattices_of_index(n)) one(l);
        }
      }
      return kOk;
    }
    if (enum_cmd->parsed()) {
      EnumerationSpec spec;
      spec.mode = mode == "all" ? EnumerationMode::AllSuperlattices : EnumerationMode::Cyclic;
      spec.bound = spec.mode == EnumerationMode::Cyclic ? r_max : index_max;
      detail::require(spec.bound >= 1, mode == "all" ? "--index-max must be >= 1" : "--r-max must be >= 1");
      spec.t = parse_rational(t_text);
      detail::require(spec.t > 0, "--t must be positive");
      spec.boundaries = boundary_set(boundary_name, boundary_file);
      spec.include_not_tlc = include_not_tlc;
      spec.workers = workers;

      std::set<std::string> done;
      if (resume) {
        detail::require(!out_path.empty() && format == "jsonl", "--resume needs --out with jsonl format");
        done = existing_keys(out_path);
        spec.skip = [&done](const Germ& g) { return done.count(germ_key(g)) > 0; };
      }
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path, resume ? std::ios::app : std::ios::trunc);
        detail::require(file.good(), "cannot write '" + out_path + "'");
      }
      std::ostream& sink = out_path.empty() ? out : file;
      if (format == "csv") sink << csv_header() << "\n";
      if (format == "markdown") sink << markdown_header() << "\n";
      enumerate_germs(spec, [&](const EnumerationRecord& r) {
        if (format == "jsonl") {
          sink << to_json(r).dump() << "\n";
        } else if (format == "csv") {
          sink << to_csv_row(r) << "\n";
        } else {
          sink << to_markdown_row(r) << "\n";
        }
      });
      return kOk;
    }
    if (comp_cmd->parsed()) {
      Germ g = germ_from_options(type, boundary);
      Json j;
      j["germ"] = to_json(g);
      j["mld"] = to_string(mld(g).value);
      j["complement"] = to_json(complement_standard(g, p, q));
      j["bounded_complement"] = to_json(bounded_complement(g));
      j["hyperplane"] = to_json(half_mld_section(g));
      j["dichotomy"] = to_json(hyperplane_dichotomy(g));
      out << j.dump() << "\n";
      return kOk;
    }
    return cmd_verify(in_path, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const TheoremViolation& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace toricmld::cli
