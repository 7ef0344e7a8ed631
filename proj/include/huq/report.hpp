#pragma once
//
// Check reports: the uniform result record every checker returns.
//
// Reports are designed for two consumers at once: a human scanning PASS/FAIL
// lines, and `replay`, which needs enough structure to re-derive the verdict.
// All serialization is canonical (nlohmann::json objects keep keys sorted),
// and nothing time- or address-dependent is ever stored, so two runs of the
// same command emit byte-identical documents. "Cost" figures are
// deterministic work counters, not wall-clock times, for the same reason.
//

#include <map>

#include <json.hpp>

#include "constructions.hpp"
#include "io.hpp"

namespace huq {

enum class Verdict { Pass, Fail, Refused };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "refused";
  }
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "refused") return Verdict::Refused;
  throw ValidationError("unknown verdict '" + s + "'");
}

// Named bindings for the quantifier prefix of a failed (or refused) check,
// e.g. {"x": 1, "xp": 0, "y": 1, "theta": [[...]]}. Keys follow each check's
// documented schema so `replay` can rebind them.
struct Counterexample {
  json bindings = json::object();
};

struct CheckReport {
  std::string check;   // machine name: "centralic", "condition-T", ...
  Verdict verdict = Verdict::Pass;
  std::optional<Counterexample> counterexample;
  json witness;        // positive certificate (tables, maps); null if none
  std::map<std::string, long long> stats; // deterministic counters and caps
  std::vector<std::string> inputs;        // display names of the inputs
  std::string note;    // one-line commentary (e.g. the reduction argument)
};

inline json hom_to_json(const Hom& h) {
  return json{{"dom", h.dom->name()}, {"cod", h.cod->name()}, {"map", h.map}};
}

inline json congruence_to_json(const Congruence& c) {
  return json{{"on", c.on->name()}, {"classes", c.classes()}};
}

inline json to_json(const CheckReport& r) {
  json j{{"check", r.check},
         {"verdict", to_string(r.verdict)},
         {"inputs", r.inputs},
         {"stats", r.stats}};
  if (r.counterexample) j["counterexample"] = r.counterexample->bindings;
  if (!r.witness.is_null()) j["witness"] = r.witness;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// One human line per check: "<check>[inputs] ... PASS" / "FAIL (...)".
inline std::string render_line(const CheckReport& r) {
  std::string line = r.check + "[";
  for (size_t i = 0; i < r.inputs.size(); ++i) line += (i ? "," : "") + r.inputs[i];
  line += "] ... ";
  switch (r.verdict) {
    case Verdict::Pass:
      line += "PASS";
      break;
    case Verdict::Fail: {
      line += "FAIL";
      if (r.counterexample) {
        line += " (";
        bool first = true;
        for (auto it = r.counterexample->bindings.begin();
             it != r.counterexample->bindings.end(); ++it) {
          if (!it->is_structured()) {
            if (!first) line += ", ";
            line += it.key() + "=" + it->dump();
            first = false;
          }
        }
        line += ")";
      }
      break;
    }
    case Verdict::Refused:
      line += "REFUSED";
      if (!r.note.empty()) line += ": " + r.note;
      break;
  }
  return line;
}

// Convenience builders keep the checkers terse.
inline CheckReport pass_report(std::string check, std::vector<std::string> inputs) {
  CheckReport r;
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.verdict = Verdict::Pass;
  return r;
}

inline CheckReport fail_report(std::string check, std::vector<std::string> inputs,
                               json bindings) {
  CheckReport r;
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.verdict = Verdict::Fail;
  r.counterexample = Counterexample{std::move(bindings)};
  return r;
}

inline CheckReport refused_report(std::string check, std::vector<std::string> inputs,
                                  std::string why) {
  CheckReport r;
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.verdict = Verdict::Refused;
  r.note = std::move(why);
  return r;
}

} // namespace huq
