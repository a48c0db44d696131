#pragma once

#include <deque>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pind/proof_tree.hpp"

namespace pind {

class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct ChoiceSourceExhausted : ExecutionError {
  explicit ChoiceSourceExhausted(const std::string& var)
      : ExecutionError("choices_exhausted", "no choice available for " + var) {}
};
struct InvalidChoice : ExecutionError {
  InvalidChoice(const std::string& var, const std::string& value, const std::string& why)
      : ExecutionError("invalid_choice", "invalid choice '" + value + "' for " + var + ": " + why) {}
};
struct NoConsistentBranch : ExecutionError {
  explicit NoConsistentBranch(const std::string& message)
      : ExecutionError("no_consistent_branch", message) {}
};
struct NonGroundWitness : ExecutionError {
  NonGroundWitness(const std::string& var, const std::string& value)
      : ExecutionError("non_ground_witness", "witness for " + var + " is not ground: " + value) {}
};

// --- transcript ------------------------------------------------------------

struct ChoiceRequested {
  std::string var;
  std::string prompt;
  bool operator==(const ChoiceRequested&) const = default;
};
struct ChoiceMade {
  std::string var;
  std::string value;
  bool operator==(const ChoiceMade&) const = default;
};
struct WitnessPrinted {
  std::string var;
  std::string value;
  bool operator==(const WitnessPrinted&) const = default;
};
struct Status {
  enum class Kind { Success, Failed, Error };
  Kind kind = Kind::Success;
  std::string code;    // error code when kind == Error
  std::string detail;
  bool operator==(const Status&) const = default;
};

using Event = std::variant<ChoiceRequested, ChoiceMade, WitnessPrinted, Status>;

std::string to_string(Status::Kind k);
std::string to_string(const Event& e);

struct Transcript {
  std::vector<Event> events;

  // Final status; Error with an empty detail if execution never finished.
  Status status() const;
  std::vector<WitnessPrinted> witnesses() const;
  std::string to_string() const;
};

// --- choices ---------------------------------------------------------------

struct ChoiceRequest {
  std::string var;      // name the user wrote
  std::string prompt;
  bool natural_only = false;
};

class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;
  // The raw answer, or nullopt when no more input will arrive.
  virtual std::optional<std::string> next(const ChoiceRequest& request) = 0;
  // True if an invalid answer should be asked again instead of failing.
  virtual bool retries() const { return false; }
  virtual void rejected(const ChoiceRequest&, const std::string& /*answer*/,
                        const std::string& /*why*/) {}
};

class ScriptedChoices : public ChoiceSource {
 public:
  explicit ScriptedChoices(std::vector<std::string> values)
      : values_(values.begin(), values.end()) {}
  std::optional<std::string> next(const ChoiceRequest&) override;
  bool exhausted() const { return values_.empty(); }

 private:
  std::deque<std::string> values_;
};

// Prompts `choose X: ` on `out` and reads one line per answer from `in`;
// blank lines are skipped.
class InteractiveChoices : public ChoiceSource {
 public:
  InteractiveChoices(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<std::string> next(const ChoiceRequest& request) override;
  bool retries() const override { return true; }
  void rejected(const ChoiceRequest&, const std::string& answer, const std::string& why) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

// Parses a user answer: a natural number, or (when allowed) a lower-case
// constant. Throws InvalidChoice.
Term parse_choice(const ChoiceRequest& request, const std::string& answer);

// --- execution -------------------------------------------------------------

using EventSink = std::function<void(const Event&)>;

// Replays `tree` from its root. Errors end up as an Error status in the
// transcript; `sink` sees every event as it happens.
Transcript execute(const ProofTree& tree, ChoiceSource& choices, const EventSink& sink = {});

struct BranchChoice {
  std::size_t child = 0;  // position among the node's children
  Run agreement;          // bindings that make F and the chosen unifier agree
};

// The unique child of a defL node whose unifier is consistent with `F`.
// Throws NoConsistentBranch when there is none or more than one.
BranchChoice select_branch(const ProofNode& node, const Run& F, const Run& agreement = {});

// Total run of an induction for bound k: the step run instantiated for
// steps 0..k-1, composed onto the base run, then renamed back so the final
// step's witnesses carry their generic names.
Run build_delta_total(const Run& psi_base, const Run& delta, const Term& step_var,
                      std::size_t k, std::size_t width);

// Runs an induction goal: atoms succeed, conjunctions run left to right,
// and each existential prints the value recorded at its location.
void exec_induction(const Run& sigma, const Run& delta_total, const Formula& goal, const Run& F,
                    const EventSink& emit);

}  // namespace pind
