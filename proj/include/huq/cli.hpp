#pragma once
//
// Command-line driver: run configuration, input resolution, command dispatch,
// report documents, and replay.
//
// Every command produces a ReportDocument: tool name and version, the
// resolved operands inlined as full algebra tables (stamped with content
// digests), one CheckReport per check performed, and deterministic cost
// counters. The document is self-contained on purpose — `replay` re-runs the
// recorded command from the inlined tables alone and compares the fresh
// reports against the stored ones, so a saved document is a checkable
// certificate, not just a log.
//
// Output is either one human line per report or the canonical JSON document
// (sorted keys, fixed indentation). Nothing time- or address-dependent is
// ever emitted, so the same command produces byte-identical output on every
// run.
//

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "catalog.hpp"
#include "centrality.hpp"
#include "conditions.hpp"
#include "constructions.hpp"
#include "io.hpp"
#include "reflections.hpp"
#include "report.hpp"
#include "terms.hpp"
#include "version.hpp"

namespace huq {

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string command;               // "check", "cooperators", ..., "terms"
  std::string kind;                  // sub-kind where the command has one
  std::string algebra, left, right;  // operands: catalog name or file path
  std::vector<std::string> catalog;  // test objects (catalog name or path each)
  long long cap_congruences = 4096;  // congruence-enumeration budget
  long long cap_steps = 1'000'000;   // term-search clone-element budget
  bool json = false;                 // emit the JSON document instead of text
  std::string replay_path;           // input file for `replay`
};

// Computable commands and their admissible sub-kinds. `replay` is not listed:
// it reconstructs one of these and never nests.
inline const std::map<std::string, std::vector<std::string>>& command_kinds() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"check",
       {"centralic", "T", "S", "unital", "weakly-unital", "gumm",
        "factor-permutable", "local-centralic", "coeq-product"}},
      {"cooperators", {}},
      {"central", {}},
      {"zmonoid", {}},
      {"symmetrizable", {}},
      {"commutative", {}},
      {"abelian", {}},
      {"reflect", {"com", "ab"}},
      {"verify", {"universal", "products"}},
      {"terms", {"majority", "m4", "plus"}},
  };
  return table;
}

// Rejects a malformed configuration before any computation starts.
inline void validate_config(const RunConfig& cfg) {
  if (cfg.cap_congruences <= 0 || cfg.cap_steps <= 0)
    throw ValidationError("caps must be positive");
  auto it = command_kinds().find(cfg.command);
  if (it == command_kinds().end())
    throw ValidationError("unknown command '" + cfg.command + "'");
  const auto& kinds = it->second;
  if (kinds.empty()) {
    if (!cfg.kind.empty())
      throw ValidationError("command '" + cfg.command + "' takes no sub-kind");
    return;
  }
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end()) {
    std::string join;
    for (size_t i = 0; i < kinds.size(); ++i) join += (i ? "|" : "") + kinds[i];
    throw ValidationError("command '" + cfg.command + "' needs a kind in {" + join +
                          "}" + (cfg.kind.empty() ? "" : ", got '" + cfg.kind + "'"));
  }
}

inline ConditionCaps condition_caps(const RunConfig& cfg) {
  ConditionCaps caps;
  caps.congruence_count_cap = cfg.cap_congruences;
  return caps;
}

inline TermSearchCaps term_caps(const RunConfig& cfg) {
  TermSearchCaps caps;
  caps.element_cap = cfg.cap_steps;
  return caps;
}

// ---------------------------------------------------------------------------
// Input resolution
// ---------------------------------------------------------------------------

// An operand names a catalog algebra first, a JSON file second.
inline AlgebraPtr resolve_algebra(const std::string& spec) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return builtin(spec);
  if (std::filesystem::exists(spec)) return load_algebra(spec);
  throw ValidationError("unknown algebra '" + spec +
                        "': not a catalog name and no such file");
}

struct ResolvedInputs {
  AlgebraPtr algebra;               // single-subject commands; cooperator target
  AlgebraPtr left, right;           // pair commands
  std::vector<AlgebraPtr> catalog;  // test objects where the command takes them
};

inline bool command_takes_pair(const std::string& command, const std::string& kind) {
  if (command == "check")
    return kind == "centralic" || kind == "unital" || kind == "weakly-unital" ||
           kind == "local-centralic" || kind == "coeq-product";
  return command == "cooperators" || command == "central" || command == "zmonoid" ||
         command == "symmetrizable" || (command == "verify" && kind == "products");
}

inline bool command_takes_catalog(const std::string& command, const std::string& kind) {
  return (command == "check" && kind == "weakly-unital") ||
         (command == "verify" && kind == "universal");
}

// Operand conventions: pair commands take --left/--right, `--algebra X` alone
// abbreviates the self-pair (X, X), and a single missing side copies the
// other. Single-subject commands take --algebra. `cooperators` additionally
// reads --algebra as the common codomain, defaulting to the right operand.
// Commands that take test objects default to the built-in catalog (the whole
// of it for universality, the same-signature slice for weak unitality).
inline ResolvedInputs resolve_inputs(const RunConfig& cfg) {
  validate_config(cfg);
  ResolvedInputs in;
  if (command_takes_pair(cfg.command, cfg.kind)) {
    std::string l = cfg.left, r = cfg.right;
    if (l.empty() && r.empty()) {
      if (cfg.algebra.empty())
        throw ValidationError(cfg.command +
                              ": provide --left/--right, or --algebra for the self-pair");
      l = r = cfg.algebra;
    } else {
      if (l.empty()) l = r;
      if (r.empty()) r = l;
    }
    in.left = resolve_algebra(l);
    in.right = resolve_algebra(r);
    if (cfg.command == "cooperators")
      in.algebra = cfg.algebra.empty() ? in.right : resolve_algebra(cfg.algebra);
  } else {
    if (cfg.algebra.empty()) throw ValidationError(cfg.command + ": provide --algebra");
    in.algebra = resolve_algebra(cfg.algebra);
  }
  if (!cfg.catalog.empty() && !command_takes_catalog(cfg.command, cfg.kind))
    throw ValidationError(
        "--catalog is only meaningful for 'check weakly-unital' and 'verify universal'");
  for (const auto& spec : cfg.catalog) in.catalog.push_back(resolve_algebra(spec));
  if (in.catalog.empty() && command_takes_catalog(cfg.command, cfg.kind))
    in.catalog = cfg.command == "check" ? slice_members(*in.left) : all_builtins();
  return in;
}

// ---------------------------------------------------------------------------
// Report documents
// ---------------------------------------------------------------------------

struct DocInput {
  std::string role;  // "left" | "right" | "algebra" | "catalog"
  AlgebraPtr algebra;
};

struct ReplaySummary {
  bool ran = false;         // this document came from `replay`
  bool reproduced = false;  // fresh reports matched the stored ones exactly
  long long compared = 0;   // stored reports compared against
  json mismatch;            // first disagreement {index, stored, recomputed}
};

struct ReportDocument {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  RunConfig config;              // the command that produced the reports
  std::vector<DocInput> inputs;  // operands inlined as full tables
  std::vector<CheckReport> reports;
  std::map<std::string, long long> cost;  // deterministic counters, no clocks
  ReplaySummary replay;
};

inline std::map<std::string, long long> tally_cost(const std::vector<CheckReport>& reports) {
  std::map<std::string, long long> cost{
      {"checks", 0}, {"pass", 0}, {"fail", 0}, {"refused", 0}, {"stat_units", 0}};
  for (const auto& r : reports) {
    ++cost["checks"];
    ++cost[to_string(r.verdict)];
    for (const auto& kv : r.stats) cost["stat_units"] += kv.second;
  }
  return cost;
}

inline json document_to_json(const ReportDocument& d) {
  json inputs = json::array();
  for (const auto& in : d.inputs)
    inputs.push_back(json{{"role", in.role},
                          {"digest", algebra_digest(*in.algebra)},
                          {"algebra", algebra_to_json(*in.algebra)}});
  json reports = json::array();
  for (const auto& r : d.reports) reports.push_back(to_json(r));
  json j{{"tool", d.tool},
         {"version", d.version},
         {"command", json{{"name", d.config.command},
                          {"kind", d.config.kind},
                          {"caps", json{{"congruences", d.config.cap_congruences},
                                        {"steps", d.config.cap_steps}}}}},
         {"inputs", inputs},
         {"reports", reports},
         {"cost", d.cost}};
  if (d.replay.ran) {
    json rep{{"reproduced", d.replay.reproduced}, {"compared", d.replay.compared}};
    if (!d.replay.mismatch.is_null()) rep["mismatch"] = d.replay.mismatch;
    j["replay"] = rep;
  }
  return j;
}

inline std::string render_document(const ReportDocument& d) {
  std::string out;
  for (const auto& r : d.reports) out += render_line(r) + "\n";
  if (d.replay.ran)
    out += d.replay.reproduced
               ? "replay: reproduced all " + std::to_string(d.replay.compared) +
                     " report(s)\n"
               : "replay: MISMATCH at report " + d.replay.mismatch["index"].dump() + "\n";
  out += "checks " + std::to_string(d.cost.at("checks")) + " | pass " +
         std::to_string(d.cost.at("pass")) + " | fail " +
         std::to_string(d.cost.at("fail")) + " | refused " +
         std::to_string(d.cost.at("refused")) + "\n";
  return out;
}

inline std::string emit_document(const ReportDocument& d, bool as_json) {
  return as_json ? document_to_json(d).dump(2) + "\n" : render_document(d);
}

// 0: every check passed; 1: some check failed; 2: some check was refused.
// A replay is judged on reproduction alone: re-deriving a recorded FAIL is a
// replay success, so it exits 0; only a mismatch exits 1.
inline int document_exit_status(const ReportDocument& d) {
  if (d.replay.ran) return d.replay.reproduced ? 0 : 1;
  bool fail = false, refused = false;
  for (const auto& r : d.reports) {
    fail |= r.verdict == Verdict::Fail;
    refused |= r.verdict == Verdict::Refused;
  }
  return refused ? 2 : fail ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

namespace cli_detail {

inline CheckReport run_check(const RunConfig& cfg, const ResolvedInputs& in) {
  ConditionCaps caps = condition_caps(cfg);
  if (cfg.kind == "centralic") return centralic_pair_check(in.left, in.right, caps);
  if (cfg.kind == "T") return condition_T_check(in.algebra, caps);
  if (cfg.kind == "S") return condition_S_check(in.algebra, caps);
  if (cfg.kind == "unital") return unital_check(in.left, in.right);
  if (cfg.kind == "weakly-unital")
    return weakly_unital_check(in.left, in.right, in.catalog, caps);
  if (cfg.kind == "gumm") return gumm_shifting_check(in.algebra, caps);
  if (cfg.kind == "factor-permutable") return factor_permutable_check(in.algebra, caps);
  if (cfg.kind == "local-centralic") {
    auto pd = product(in.left, in.right);
    return local_centralic_check(pd.proj1, pd.proj1, caps);
  }
  return coeq_product_commute_sweep(in.left, in.right);
}

inline CheckReport run_cooperators(const ResolvedInputs& in) {
  auto fs = enumerate_homs(in.left, in.algebra);
  auto gs = enumerate_homs(in.right, in.algebra);
  json entries = json::array();
  long long pairs = 0, cooperating = 0, total = 0;
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto ws = find_cooperators(f, g);
      ++pairs;
      if (!ws.empty()) ++cooperating;
      total += static_cast<long long>(ws.size());
      json coops = json::array();
      for (const auto& w : ws) coops.push_back(w.rho.map);
      entries.push_back(json{{"f", f.map}, {"g", g.map}, {"cooperators", coops}});
    }
  auto r =
      pass_report("cooperators", {in.left->name(), in.right->name(), in.algebra->name()});
  r.witness = json{{"pairs", entries}};
  r.stats = {{"homs_left", static_cast<long long>(fs.size())},
             {"homs_right", static_cast<long long>(gs.size())},
             {"pairs", pairs},
             {"cooperating", cooperating},
             {"cooperators_total", total}};
  r.note = "every hom pair into the target with its full cooperator list";
  return r;
}

inline CheckReport run_central(const ResolvedInputs& in) {
  auto hs = enumerate_homs(in.left, in.right);
  json entries = json::array();
  long long central = 0;
  for (const auto& h : hs)
    if (auto w = is_central(h)) {
      ++central;
      entries.push_back(json{{"f", h.map}, {"rho", w->rho.map}});
    }
  auto r = pass_report("central", {in.left->name(), in.right->name()});
  r.witness = json{{"central", entries}};
  r.stats = {{"homs", static_cast<long long>(hs.size())}, {"central", central}};
  r.note = "each central hom with its cooperator against the identity";
  return r;
}

inline CheckReport run_zmonoid(const ResolvedInputs& in) {
  MonoidTable mt = z_monoid(in.left, in.right);
  json homs = json::array();
  for (const auto& h : mt.homs) homs.push_back(h.map);
  auto r = pass_report("zmonoid", {in.left->name(), in.right->name()});
  r.witness = json{{"homs", homs},
                   {"central", mt.central},
                   {"unit", mt.unit},
                   {"add", mt.add},
                   {"action", mt.action}};
  r.stats = {{"homs", static_cast<long long>(mt.homs.size())},
             {"central", static_cast<long long>(mt.central.size())}};
  r.note = "rows of 'add' index the central list; 'action' values index the hom list";
  return r;
}

inline CheckReport run_symmetrizable(const ResolvedInputs& in) {
  auto hs = enumerate_homs(in.left, in.right);
  json entries = json::array();
  long long central = 0, symmetrizable = 0;
  for (const auto& h : hs) {
    auto w = is_central(h);
    if (!w) continue;
    ++central;
    SymmetrizableResult sres = is_symmetrizable(*w);
    if (sres.symmetrizable) ++symmetrizable;
    entries.push_back(json{{"f", h.map},
                           {"symmetrizable", sres.symmetrizable},
                           {"inverse", sres.inverse ? json(sres.inverse->map) : json()}});
  }
  auto r = pass_report("symmetrizable", {in.left->name(), in.right->name()});
  r.witness = json{{"central", entries}};
  r.stats = {{"homs", static_cast<long long>(hs.size())},
             {"central", central},
             {"symmetrizable", symmetrizable}};
  r.note = "each central hom tested for an additive inverse";
  return r;
}

inline CheckReport run_commutative(const ResolvedInputs& in) {
  auto structures = commutative_structures(in.algebra);
  if (structures.empty()) {
    auto r = fail_report("commutative", {in.algebra->name()}, json{{"structures", 0}});
    r.note = "the identity admits no cooperator with itself";
    return r;
  }
  json maps = json::array();
  for (const auto& s : structures) maps.push_back(s.map);
  auto r = pass_report("commutative", {in.algebra->name()});
  r.witness = json{{"structures", maps}};
  r.stats = {{"structures", static_cast<long long>(structures.size())}};
  r.note = "internal magma structures on the square, lexicographically ordered";
  return r;
}

inline CheckReport run_abelian(const ResolvedInputs& in) {
  AbelianResult res = is_abelian_object(in.algebra);
  if (res.abelian) {
    auto r = pass_report("abelian", {in.algebra->name()});
    r.witness = json{{"structure", res.structure->map}, {"inverse", res.inverse->map}};
    r.note = "internal abelian group structure verified law by law";
    return r;
  }
  CheckReport r;
  if (!res.structure) {
    r = fail_report("abelian", {in.algebra->name()}, json{{"stage", "commutative"}});
    r.note = "not a commutative object: the identity admits no cooperator with itself";
  } else {
    r = fail_report("abelian", {in.algebra->name()},
                    json{{"stage", "symmetrizable"}, {"structure", res.structure->map}});
    r.note = "commutative, but the identity has no additive inverse";
  }
  return r;
}

inline CheckReport run_reflect(const RunConfig& cfg, const ResolvedInputs& in) {
  ReflectionResult res =
      cfg.kind == "com" ? com_reflection(in.algebra) : ab_reflection(in.algebra);
  auto r = pass_report("reflect-" + cfg.kind, {in.algebra->name()});
  r.witness = reflection_to_json(res);
  r.stats = {{"source_size", static_cast<long long>(res.source->size())},
             {"reflected_size", static_cast<long long>(res.reflected->size())},
             {"square_size", static_cast<long long>(res.square.prod->size())}};
  return r;
}

inline std::vector<CheckReport> run_verify(const RunConfig& cfg, const ResolvedInputs& in) {
  if (cfg.kind == "products") return {verify_product_preservation(in.left, in.right)};
  std::vector<CheckReport> out;
  auto rc = com_reflection(in.algebra);
  out.push_back(verify_universal_arrow(rc, ReflectionKind::Com, in.catalog));
  if (is_commutative_object(in.algebra)) {
    auto ra = ab_reflection(in.algebra);
    out.push_back(verify_universal_arrow(ra, ReflectionKind::Ab, in.catalog));
  }
  return out;
}

inline CheckReport run_terms(const RunConfig& cfg, const ResolvedInputs& in) {
  TermKind kind = cfg.kind == "majority" ? TermKind::Majority
                  : cfg.kind == "m4"     ? TermKind::M4
                                         : TermKind::UnitalPlus;
  TermSearchOutcome out = term_search(in.algebra, kind, term_caps(cfg));
  std::string check = "terms-" + cfg.kind;
  std::vector<std::string> inputs{in.algebra->name()};
  if (out.status == TermSearchOutcome::Status::Found) {
    auto r = pass_report(check, inputs);
    r.witness = json{{"term", term_to_json(*out.term, in.algebra->signature())},
                     {"rendered", term_to_string(*out.term, in.algebra->signature())}};
    r.stats = {{"closure_size", out.closure_size}, {"applications", out.applications}};
    r.note = "the witness re-validates against the defining identities";
    return r;
  }
  if (out.status == TermSearchOutcome::Status::None) {
    auto r = fail_report(check, inputs, json{{"closure_size", out.closure_size}});
    r.stats = {{"closure_size", out.closure_size}, {"applications", out.applications}};
    r.note = "the clone closure was exhausted without a conforming operation";
    return r;
  }
  auto r = refused_report(check, inputs, out.refusal);
  r.stats = {{"closure_size", out.closure_size}, {"applications", out.applications}};
  return r;
}

}  // namespace cli_detail

// Runs one computable command over resolved inputs and assembles the
// document. The only error turned into a report rather than propagated is a
// non-centralic ambient under `zmonoid`: the certificate of that refusal is
// itself a replayable failed check.
inline ReportDocument run_command(const RunConfig& cfg, const ResolvedInputs& in) {
  validate_config(cfg);
  ReportDocument doc;
  doc.config = cfg;
  if (command_takes_pair(cfg.command, cfg.kind)) {
    doc.inputs.push_back({"left", in.left});
    doc.inputs.push_back({"right", in.right});
    if (cfg.command == "cooperators") doc.inputs.push_back({"algebra", in.algebra});
  } else {
    doc.inputs.push_back({"algebra", in.algebra});
  }
  for (const auto& t : in.catalog) doc.inputs.push_back({"catalog", t});

  if (cfg.command == "check") {
    doc.reports.push_back(cli_detail::run_check(cfg, in));
  } else if (cfg.command == "cooperators") {
    doc.reports.push_back(cli_detail::run_cooperators(in));
  } else if (cfg.command == "central") {
    doc.reports.push_back(cli_detail::run_central(in));
  } else if (cfg.command == "zmonoid") {
    try {
      doc.reports.push_back(cli_detail::run_zmonoid(in));
    } catch (const NotCentralicError& e) {
      doc.reports.push_back(e.report);
    }
  } else if (cfg.command == "symmetrizable") {
    doc.reports.push_back(cli_detail::run_symmetrizable(in));
  } else if (cfg.command == "commutative") {
    doc.reports.push_back(cli_detail::run_commutative(in));
  } else if (cfg.command == "abelian") {
    doc.reports.push_back(cli_detail::run_abelian(in));
  } else if (cfg.command == "reflect") {
    doc.reports.push_back(cli_detail::run_reflect(cfg, in));
  } else if (cfg.command == "verify") {
    for (auto& r : cli_detail::run_verify(cfg, in)) doc.reports.push_back(std::move(r));
  } else {
    doc.reports.push_back(cli_detail::run_terms(cfg, in));
  }
  doc.cost = tally_cost(doc.reports);
  return doc;
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

// Re-runs the command recorded in a saved document from its inlined tables
// and compares the fresh reports — as canonical JSON — against the stored
// ones. Digests are re-checked on load, so a tampered input table is an
// input error, not a "failure to reproduce".
inline ReportDocument run_replay(const std::string& path) {
  std::ifstream fin(path);
  if (!fin) throw ValidationError("cannot open report '" + path + "'");
  json j;
  try {
    j = json::parse(fin);
  } catch (const json::parse_error& e) {
    throw ValidationError("report '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ValidationError("report '" + path + "' must be a JSON object");
  for (const char* key : {"command", "inputs", "reports"})
    if (!j.contains(key))
      throw ValidationError("report '" + path + "' is missing key '" + std::string(key) +
                            "'");
  const json& cmd = j["command"];
  if (!cmd.is_object() || !cmd.contains("name") || !cmd["name"].is_string())
    throw ValidationError("report '" + path + "': 'command' must be {name, kind, caps}");

  RunConfig cfg;
  cfg.command = cmd["name"].get<std::string>();
  cfg.kind = cmd.value("kind", "");
  if (cmd.contains("caps") && cmd["caps"].is_object()) {
    cfg.cap_congruences = cmd["caps"].value("congruences", cfg.cap_congruences);
    cfg.cap_steps = cmd["caps"].value("steps", cfg.cap_steps);
  }
  validate_config(cfg);

  if (!j["inputs"].is_array())
    throw ValidationError("report '" + path + "': 'inputs' must be an array");
  ResolvedInputs in;
  for (const json& e : j["inputs"]) {
    if (!e.is_object() || !e.contains("role") || !e.contains("algebra"))
      throw ValidationError("report '" + path + "': each input needs 'role' and 'algebra'");
    AlgebraPtr a;
    try {
      a = algebra_from_json(e["algebra"]);
    } catch (const ValidationError& err) {
      throw ValidationError("report '" + path + "': " + err.what());
    }
    if (e.contains("digest") && e["digest"].get<std::string>() != algebra_digest(*a))
      throw ValidationError("report '" + path + "': digest mismatch on input '" +
                            a->name() + "'");
    std::string role = e["role"].get<std::string>();
    if (role == "left") {
      in.left = a;
    } else if (role == "right") {
      in.right = a;
    } else if (role == "algebra") {
      in.algebra = a;
    } else if (role == "catalog") {
      in.catalog.push_back(a);
    } else {
      throw ValidationError("report '" + path + "': unknown input role '" + role + "'");
    }
  }
  if (command_takes_pair(cfg.command, cfg.kind)) {
    if (!in.left || !in.right)
      throw ValidationError("report '" + path + "': command '" + cfg.command +
                            "' needs 'left' and 'right' inputs");
    if (cfg.command == "cooperators" && !in.algebra) in.algebra = in.right;
  } else if (!in.algebra) {
    throw ValidationError("report '" + path + "': command '" + cfg.command +
                          "' needs an 'algebra' input");
  }
  if (!j["reports"].is_array())
    throw ValidationError("report '" + path + "': 'reports' must be an array");

  ReportDocument doc = run_command(cfg, in);
  json fresh = json::array();
  for (const auto& r : doc.reports) fresh.push_back(to_json(r));
  const json& stored = j["reports"];
  doc.replay.ran = true;
  doc.replay.compared = static_cast<long long>(stored.size());
  doc.replay.reproduced = fresh == stored;
  if (!doc.replay.reproduced) {
    size_t i = 0;
    while (i < fresh.size() && i < stored.size() && fresh[i] == stored[i]) ++i;
    doc.replay.mismatch = json{{"index", i},
                               {"stored", i < stored.size() ? stored[i] : json()},
                               {"recomputed", i < fresh.size() ? fresh[i] : json()}};
  }
  return doc;
}

}  // namespace huq
