#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pind/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interpreter for definition programs with natural-number induction"};
  app.require_subcommand(1);

  pind::SessionConfig config;
  config.depth_limit = pind::depth_limit_from_env(config.depth_limit);
  std::string choices;
  bool json = false;
  bool trace = false;

  auto* prove = app.add_subcommand("prove", "prove a goal, then play it");
  prove->add_option("file", config.program_path, "program file")->required();
  prove->add_option("--goal", config.goal_text, "goal formula")->required();
  auto* choices_opt =
      prove->add_option("--choices", choices, "comma-separated answers for universal choices");
  prove->add_flag("--json", json, "emit JSON-lines events");
  prove->add_flag("--trace", trace, "print the proof tree before playing");
  prove->add_option("--depth-limit", config.depth_limit, "rule-application budget")
      ->check(CLI::PositiveNumber);

  auto* repl = app.add_subcommand("repl", "interactive session");
  repl->add_option("file", config.program_path, "program file")->required();
  repl->add_flag("--json", json, "speak the JSON-lines protocol");
  repl->add_option("--depth-limit", config.depth_limit, "rule-application budget")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : pind::kExitUsage;
  }

  if (json && trace) {
    std::cerr << "--json and --trace cannot be combined\n";
    return pind::kExitUsage;
  }
  config.output = json ? pind::OutputMode::Json
                       : trace ? pind::OutputMode::Trace : pind::OutputMode::Human;

  if (*repl) return pind::run_repl(config, std::cin, std::cout, std::cerr);

  if (*choices_opt) {
    std::vector<std::string> values;
    std::string item;
    for (char c : choices + ",") {
      if (c == ',') {
        if (!item.empty()) values.push_back(item);
        item.clear();
      } else if (c != ' ') {
        item += c;
      }
    }
    config.choices = values;
  }
  return pind::run_script(config, std::cin, std::cout, std::cerr);
}
