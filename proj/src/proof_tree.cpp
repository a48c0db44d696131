#include "pind/proof_tree.hpp"

#include <set>
#include <sstream>

namespace pind {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::L0: return "l0";
    case Mode::L1: return "l1";
    case Mode::I0: return "i0";
    case Mode::I1: return "i1";
  }
  return "?";
}

std::string Sequent::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i) os << ", ";
    os << premises[i].to_string();
  }
  if (!premises.empty()) os << ' ';
  os << "|- " << goal.to_string();
  return os.str();
}

std::vector<std::size_t> ProofTree::children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t d : nodes_.at(i).child_distances) out.push_back(i - d);
  return out;
}

std::string ProofTree::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ProofNode& n = nodes_[i];
    os << i << '\t' << to_string(n.sequent.mode) << '\t' << n.sequent.sigma.to_string()
       << '\t' << (n.sequent.delta ? n.sequent.delta->to_string() : "-") << '\t'
       << n.sequent.to_string() << '\t' << (n.failure ? "Failure" : n.result.to_string())
       << '\t';
    for (std::size_t d : n.child_distances) os << d << "::";
    os << "nil";
    if (!n.label.empty()) os << "\t% " << n.label;
    os << '\n';
  }
  return os.str();
}

namespace {

// Modes a rule's children may be in.
std::set<Mode> child_modes(Rule r) {
  switch (r) {
    case Rule::TopR:
    case Rule::NatZeroR:
    case Rule::BotL:
    case Rule::StepHypothesis:
    case Rule::StepTopR:
      return {};
    case Rule::NatSuccR:
    case Rule::DefR:
    case Rule::AndR:
    case Rule::ForallR:
    case Rule::ExistsR:
      return {Mode::L1};
    case Rule::ImpR:
    case Rule::NatImpR:
      return {Mode::L0};
    case Rule::TopL:
    case Rule::AndL:
    case Rule::ExistsL:
    case Rule::DefL:
      return {Mode::L0, Mode::L1};
    case Rule::Induction:
      return {Mode::L1, Mode::I0};
    case Rule::StepAndL:
    case Rule::StepExistsL:
      return {Mode::I0};
    case Rule::StepDefR:
    case Rule::StepAndR:
    case Rule::StepExistsR:
      return {Mode::I1};
  }
  return {};
}

std::set<Mode> own_modes(Rule r) {
  switch (r) {
    case Rule::TopR:
    case Rule::NatZeroR:
    case Rule::NatSuccR:
    case Rule::DefR:
    case Rule::AndR:
    case Rule::ImpR:
    case Rule::NatImpR:
    case Rule::ForallR:
    case Rule::ExistsR:
      return {Mode::L1};
    case Rule::BotL:
    case Rule::TopL:
    case Rule::AndL:
    case Rule::ExistsL:
    case Rule::DefL:
    case Rule::Induction:
      return {Mode::L0};
    case Rule::StepAndL:
    case Rule::StepExistsL:
      return {Mode::I0};
    default:
      // i1 rules; the first one after the hypotheses are decomposed is
      // shown in i0.
      return {Mode::I0, Mode::I1};
  }
}

std::size_t arity_limit(Rule r) {
  switch (r) {
    case Rule::TopR:
    case Rule::NatZeroR:
    case Rule::BotL:
    case Rule::StepHypothesis:
    case Rule::StepTopR:
      return 0;
    case Rule::AndR:
    case Rule::Induction:
    case Rule::StepAndR:
      return 2;
    case Rule::DefL:
      return static_cast<std::size_t>(-1);
    default:
      return 1;
  }
}

}  // namespace

std::vector<std::string> ProofTree::validate() const {
  std::vector<std::string> problems;
  if (nodes_.empty()) {
    problems.push_back("empty tree");
    return problems;
  }
  std::vector<std::size_t> parents(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ProofNode& n = nodes_[i];
    auto where = "node " + std::to_string(i) + ": ";
    if (!own_modes(n.rule).count(n.sequent.mode)) {
      problems.push_back(where + "mode " + to_string(n.sequent.mode) +
                         " not allowed for its rule");
    }
    if (n.child_distances.size() > arity_limit(n.rule)) {
      problems.push_back(where + "too many children");
    }
    if (n.rule == Rule::Induction && n.child_distances.size() != 2) {
      problems.push_back(where + "induction needs a base and a step");
    }
    auto allowed = child_modes(n.rule);
    for (std::size_t k = 0; k < n.child_distances.size(); ++k) {
      std::size_t d = n.child_distances[k];
      if (d == 0 || d > i) {
        problems.push_back(where + "distance " + std::to_string(d) + " out of range");
        continue;
      }
      std::size_t c = i - d;
      ++parents[c];
      Mode cm = nodes_[c].sequent.mode;
      bool ok = allowed.count(cm) > 0;
      if (n.rule == Rule::Induction) ok = cm == (k == 0 ? Mode::L1 : Mode::I0);
      if (!ok) {
        problems.push_back(where + "child " + std::to_string(c) + " has mode " +
                           to_string(cm));
      }
    }
  }
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (parents[i] != 1) {
      problems.push_back("node " + std::to_string(i) + " has " +
                         std::to_string(parents[i]) + " parents");
    }
  }
  if (parents.back() != 0) problems.push_back("root is referenced as a child");
  return problems;
}

}  // namespace pind
