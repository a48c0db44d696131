#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "pind/formula.hpp"
#include "pind/parser.hpp"

namespace pind {

struct LevelReport {
  // Level (0 or 1) of every predicate mentioned by the program or goal.
  std::map<std::string, int> levels;
};

class LevelError : public std::runtime_error {
 public:
  LevelError(const std::string& message, std::size_t line)
      : std::runtime_error(message), line_(line) {}
  // Source line of the offending clause; 0 when the goal is at fault.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Computes the least level assignment consistent with the clauses (a body
// using forall or => or a level-1 atom lifts its head to level 1; `%level`
// annotations are fixed) and checks level(head) >= level(body) for every
// clause. G-positions of the goal must only mention level-0 atoms.
LevelReport check_levels(const Program& program, const Formula& goal);

// Level of a formula under an assignment; undefined predicates count as 0.
int formula_level(const Formula& f, const std::map<std::string, int>& levels);

}  // namespace pind
