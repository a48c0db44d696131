#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pind/formula.hpp"
#include "pind/term.hpp"

namespace pind {

// Syntax error with a 1-based source position and the tokens that would
// have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             const std::string& found);
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

// A well-formed formula placed where the grammar only admits a G-formula.
class GrammarViolation : public ParseError {
 public:
  using ParseError::ParseError;
};

// `head := body.` with the head's free variables implicitly universal.
struct DefinitionClause {
  Term head;     // Compound
  Formula body;
  std::size_t line = 0;

  std::string to_string() const;
};

struct Program {
  std::vector<DefinitionClause> clauses;
  // Explicit `%level p n` annotations.
  std::map<std::string, int> declared_levels;

  std::string to_string() const;
};

Program parse_program(std::string_view text);
Formula parse_goal(std::string_view text);
// Parses a single term (used for scripted values and tests).
Term parse_term(std::string_view text);

}  // namespace pind
