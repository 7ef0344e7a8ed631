//
// huq: a workbench for commutation in finite pointed algebras.
//
// Exit status: 0 every check passed, 1 some check failed (a counterexample
// is in the output), 2 a check was refused under its budget or the input was
// invalid. `replay` exits 0 exactly when the saved document is reproduced,
// whatever its recorded verdicts were.
//

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <huq/cli.hpp>

namespace {

void add_operand_flags(CLI::App* cmd, huq::RunConfig& cfg, bool with_catalog) {
  cmd->add_option("--algebra", cfg.algebra,
                  "subject algebra (pair commands: the self-pair): catalog name or JSON file");
  cmd->add_option("--left", cfg.left, "left operand: catalog name or JSON file");
  cmd->add_option("--right", cfg.right, "right operand: catalog name or JSON file");
  if (with_catalog)
    cmd->add_option("--catalog", cfg.catalog,
                    "test algebras, repeatable; defaults to the built-in catalog");
  cmd->add_flag("--json", cfg.json, "emit the canonical JSON report document");
  cmd->add_option("--cap-congruences", cfg.cap_congruences,
                  "congruence-enumeration budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cap-steps", cfg.cap_steps, "term-search element budget")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  huq::RunConfig cfg;
  CLI::App app{std::string(huq::kToolName) +
               " — a workbench for commutation in finite pointed algebras"};
  app.set_version_flag("--version",
                       std::string(huq::kToolName) + " " + huq::kToolVersion);
  app.require_subcommand(1);

  const std::map<std::string, std::string> blurbs = {
      {"check", "structural condition checks on an algebra or a pair"},
      {"cooperators", "enumerate cooperators for every pair of homs into a target"},
      {"central", "list the central homs between two algebras"},
      {"zmonoid", "tabulate the commutative monoid of central homs and its action"},
      {"symmetrizable", "test each central hom for an additive inverse"},
      {"commutative", "decide whether the algebra is a commutative object"},
      {"abelian", "decide whether the algebra is an abelian object"},
      {"reflect", "compute the commutative (com) or abelian (ab) reflection"},
      {"verify", "certify reflection universality or product preservation"},
      {"terms", "search for majority / m4 / plus terms"},
  };
  for (const auto& [name, kinds] : huq::command_kinds()) {
    CLI::App* cmd = app.add_subcommand(name, blurbs.at(name));
    if (!kinds.empty()) {
      std::string join;
      for (size_t i = 0; i < kinds.size(); ++i) join += (i ? "|" : "") + kinds[i];
      cmd->add_option("kind", cfg.kind, join)->required()->check(CLI::IsMember(kinds));
    }
    add_operand_flags(cmd, cfg, name == "check" || name == "verify");
  }
  CLI::App* rep =
      app.add_subcommand("replay", "re-run a saved report document and compare");
  rep->add_option("file", cfg.replay_path, "report document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  rep->add_flag("--json", cfg.json, "emit the canonical JSON report document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit 0; a parse error is an input error
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    huq::ReportDocument doc = cfg.command == "replay"
                                  ? huq::run_replay(cfg.replay_path)
                                  : huq::run_command(cfg, huq::resolve_inputs(cfg));
    std::cout << huq::emit_document(doc, cfg.json);
    return huq::document_exit_status(doc);
  } catch (const huq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
