#include "pind/levels.hpp"

namespace pind {

int formula_level(const Formula& f, const std::map<std::string, int>& levels) {
  switch (f.kind()) {
    case FormulaKind::Forall:
    case FormulaKind::Implies:
    case FormulaKind::NatImplies:
      return 1;
    case FormulaKind::Atom: {
      auto it = levels.find(f.term().name());
      return it == levels.end() ? 0 : it->second;
    }
    case FormulaKind::And:
      return std::max(formula_level(f.lhs(), levels), formula_level(f.rhs(), levels));
    case FormulaKind::Exists:
      return formula_level(f.body(), levels);
    default:
      return 0;
  }
}

namespace {

// Checks that every G-position of `f` only mentions level-0 atoms.
void check_g_positions(const Formula& f, const std::map<std::string, int>& levels,
                       std::size_t line, const std::string& where) {
  auto require_level0 = [&](const Formula& g) {
    if (formula_level(g, levels) != 0) {
      throw LevelError(where + ": level-1 atom in a level-0 position: " + g.to_string(),
                       line);
    }
  };
  switch (f.kind()) {
    case FormulaKind::Implies:
      require_level0(f.lhs());
      check_g_positions(f.rhs(), levels, line, where);
      return;
    case FormulaKind::NatImplies:
      require_level0(f.body());
      return;
    case FormulaKind::And:
      check_g_positions(f.lhs(), levels, line, where);
      check_g_positions(f.rhs(), levels, line, where);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      check_g_positions(f.body(), levels, line, where);
      return;
    default:
      return;
  }
}

}  // namespace

LevelReport check_levels(const Program& program, const Formula& goal) {
  LevelReport report;
  auto mention = [&](const std::string& p) { report.levels.emplace(p, 0); };
  for (const auto& c : program.clauses) {
    mention(c.head.name());
    std::vector<std::string> preds;
    collect_predicates(c.body, preds);
    for (const auto& p : preds) mention(p);
  }
  std::vector<std::string> goal_preds;
  collect_predicates(goal, goal_preds);
  for (const auto& p : goal_preds) mention(p);
  for (const auto& [p, l] : program.declared_levels) report.levels[p] = l;

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : program.clauses) {
      const auto& name = c.head.name();
      if (program.declared_levels.count(name)) continue;
      if (report.levels[name] == 0 && formula_level(c.body, report.levels) == 1) {
        report.levels[name] = 1;
        changed = true;
      }
    }
  }

  for (const auto& c : program.clauses) {
    int head = report.levels[c.head.name()];
    int body = formula_level(c.body, report.levels);
    if (head < body) {
      throw LevelError("clause at line " + std::to_string(c.line) + " (" + c.to_string() +
                           "): level-" + std::to_string(head) +
                           " head with a level-" + std::to_string(body) + " body",
                       c.line);
    }
    check_g_positions(c.body, report.levels, c.line,
                      "clause at line " + std::to_string(c.line));
  }
  check_g_positions(goal, report.levels, 0, "goal");
  return report;
}

}  // namespace pind
