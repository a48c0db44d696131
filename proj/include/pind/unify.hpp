#pragma once

#include <optional>

#include "pind/run.hpp"
#include "pind/term.hpp"

namespace pind {

// Outcome of unification: the unifier, or nullopt for "no unifier".
using UnifyOutcome = std::optional<Run>;

// Unifies `a` and `b` under the bindings already in `run`, appending new
// bindings on success. On failure `run` is left as it was.
// 
// Unification is syntactic after folding ground arithmetic, with one
// arithmetic extension: a literal n > 0 unifies with t+1 by unifying n-1
// with t. An unbound variable is bound to the other side as written (not
// dereferenced), so X against a bound h_0 yields X -> h_0.
// 
// Rigid variables behave as constants. Right rules treat eigenvariables as
// rigid; an induction step also fixes its hypothesis witnesses
// (w_r with r < witness_below). Case analysis on the left instantiates
// everything.
struct Rigidity {
  bool eigen = false;
  std::size_t witness_below = 0;

  bool operator()(const Term& v) const {
    return (eigen && v.kind() == TermKind::Eigen) ||
           (v.is_witness() && v.index() < witness_below);
  }
};

bool unify(const Term& a, const Term& b, Run& run, Rigidity rigid = {});

// Most general unifier of two terms, eigenvariables instantiable.
UnifyOutcome mgu(const Term& a, const Term& b);

}  // namespace pind
