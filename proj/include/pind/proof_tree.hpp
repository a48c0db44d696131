#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pind/formula.hpp"
#include "pind/run.hpp"

namespace pind {

enum class Mode { L0, L1, I0, I1 };

std::string to_string(Mode m);

// The inference rule applied at a node.
enum class Rule {
  // level 1 (right rules)
  TopR,
  NatZeroR,
  NatSuccR,
  DefR,
  AndR,
  ImpR,
  NatImpR,
  ForallR,
  ExistsR,
  // level 0 (left rules)
  BotL,
  TopL,
  AndL,
  ExistsL,
  DefL,
  Induction,
  // induction step
  StepAndL,
  StepExistsL,
  StepHypothesis,
  StepDefR,
  StepAndR,
  StepExistsR,
  StepTopR,
};

struct Sequent {
  Mode mode = Mode::L1;
  Run sigma;
  std::optional<Run> delta;  // induction modes only
  std::vector<Formula> premises;
  Formula goal = Formula::top();

  std::string to_string() const;  // "P1, P2 |- G"
};

// ⟨sequent, final run, child distances⟩ plus what replay needs.
// 
// `sigma`, `delta` and `result` are display runs: renamed clause variables
// are projected away and values are resolved through the node's final run.
struct ProofNode {
  Sequent sequent;
  Rule rule = Rule::TopR;
  std::string label;
  bool failure = false;          // result is FailureRun
  Run result;                    // meaningful when !failure
  std::vector<std::size_t> child_distances;

  // ForallR: the eigenvariable standing for the user's choice; set when the
  // body is nat(x) => G, so the choice must be a natural number.
  std::optional<Term> eigen;
  bool nat_guarded = false;
  // ExistsR: the witness variable. ForallR and ExistsR: the quantifier.
  std::optional<Term> witness;
  std::optional<Binder> binder;
  // DefL: the unifier that selected each child, in child order.
  std::vector<Run> thetas;
  // Induction: induction variable n, step eigenvariable j, existential count.
  std::optional<Term> induction_var;
  std::optional<Term> step_var;
  std::size_t width = 0;
};

// Nodes stored children-first; the root is the last node. The child of
// node i at distance d is node i-d.
class ProofTree {
 public:
  ProofTree() = default;
  explicit ProofTree(std::vector<ProofNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<ProofNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const ProofNode& at(std::size_t i) const { return nodes_.at(i); }
  std::size_t root_index() const { return nodes_.size() - 1; }
  const ProofNode& root() const { return nodes_.back(); }
  std::vector<std::size_t> children(std::size_t i) const;

  // One node per line, bottom-up, tab-separated:
  // index, mode, sigma, delta, sequent, result, child distances, rule.
  std::string dump() const;

  // Structural problems (index range, single parent, root last, mode
  // discipline); empty when the tree is well formed.
  std::vector<std::string> validate() const;

 private:
  std::vector<ProofNode> nodes_;
};

}  // namespace pind
