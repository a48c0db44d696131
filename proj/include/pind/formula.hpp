#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pind/run.hpp"
#include "pind/term.hpp"

namespace pind {

enum class FormulaKind {
  Top,
  Bot,
  Nat,         // nat(t)
  Atom,        // p(t1, ..., tn)
  And,
  Exists,
  Forall,
  Implies,     // G => D
  NatImplies,  // nat(x) => G
};

// A quantifier's bound variable plus the bookkeeping the prover attaches
// when the formula becomes an induction goal.
struct Binder {
  Term var;                 // unique Var after alpha-renaming
  std::string display;      // name as the user wrote it
  bool from_goal = false;   // written in the goal, not in a clause body
  // Set on induction goals: ordinal of this existential among the goal's
  // existentials (allocates witness w_{slot}) and, for the step conclusion,
  // the location key recorded with the witness.
  std::optional<std::size_t> slot;
  std::optional<LocKey> loc;
};

// Immutable goal formula covering both grammars: D-formulas use every kind,
// G-formulas (see is_g_formula) exclude Forall, Implies and NatImplies.
class Formula {
 public:
  static Formula top();
  static Formula bot();
  static Formula nat(Term arg);
  static Formula atom(Term atom);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula exists(Binder binder, Formula body);
  static Formula forall(Binder binder, Formula body);
  static Formula implies(Formula antecedent, Formula consequent);
  static Formula nat_implies(Term var, Formula body);

  FormulaKind kind() const { return node_->kind; }
  // nat argument, atom term, or the variable of NatImplies.
  const Term& term() const { return *node_->term; }
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }
  // Body of a quantifier or NatImplies.
  const Formula& body() const { return node_->children.at(0); }
  const Binder& binder() const { return *node_->binder; }

  bool is_atomic() const {
    auto k = kind();
    return k == FormulaKind::Top || k == FormulaKind::Bot ||
           k == FormulaKind::Nat || k == FormulaKind::Atom;
  }

  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::optional<Term> term;
    std::optional<Binder> binder;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

// True if the formula belongs to the G grammar (no forall, no implication).
bool is_g_formula(const Formula& f);

// Applies `fn` to every term position (nat arguments, atoms, NatImplies
// variables). Binders are untouched.
Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn);

// Replaces the variable `var` by `value` everywhere.
Formula substitute(const Formula& f, const Term& var, const Term& value);

// Eagerly applies a run to every term of the formula.
Formula apply(const Run& run, const Formula& f);

// Rewrites binders with `fn` (used to attach slots and locations).
Formula map_binders(const Formula& f,
                    const std::function<Binder(const Binder&,
                                               const std::vector<std::size_t>&)>& fn,
                    std::vector<std::size_t> path = {});

// Number of existential binders, counted syntactically.
std::size_t count_exists(const Formula& f);

// True if the formula contains a Top, Bot or nat subformula.
bool contains_trivial_or_nat(const Formula& f);

// Predicate names of all atoms, in order of first occurrence.
void collect_predicates(const Formula& f, std::vector<std::string>& out);

// Variables occurring in term positions (free or bound).
void collect_variables(const Formula& f, std::vector<Term>& out);

}  // namespace pind
