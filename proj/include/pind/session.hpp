#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pind/executor.hpp"

namespace pind {

enum class OutputMode { Human, Json, Trace };

struct SessionConfig {
  std::string program_path;
  std::string goal_text;
  std::optional<std::vector<std::string>> choices;  // scripted when present
  std::size_t depth_limit = 100000;
  OutputMode output = OutputMode::Human;
};

enum ExitCode { kExitSuccess = 0, kExitProofFailed = 1, kExitUsage = 2, kExitExecution = 3 };

int exit_code(const Status& status);

// Loads, checks and proves the goal, then plays it with the configured
// choices (or answers read from `in`). Returns the exit code.
int run_script(const SessionConfig& config, std::istream& in, std::ostream& out,
               std::ostream& err);

// Interactive loop: one goal per line, `:tree` dumps the last proof tree,
// `:quit` leaves.
int run_repl(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

// Budget from PIND_DEPTH_LIMIT, or `fallback` when unset or malformed.
std::size_t depth_limit_from_env(std::size_t fallback);

}  // namespace pind
