#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pind/term.hpp"

namespace pind {

// Names the syntactic position of an existential quantifier inside an
// induction goal. `path` is the position of the binder within the goal,
// followed by one entry per induction step the location was shifted to.
struct LocKey {
  std::string base;
  std::vector<std::size_t> path;

  auto operator<=>(const LocKey&) const = default;
  bool operator==(const LocKey&) const = default;
};

// Either a variable (Var, Indexed or Eigen term) or a location.
using BindingKey = std::variant<Term, LocKey>;

std::string to_string(const BindingKey& key);

struct Binding {
  BindingKey key;
  Term value;
};

class CompositionConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An answer substitution: an ordered list of bindings, oldest first.
// 
// Bindings form a triangular substitution. Values may mention other keys of
// the same run; `apply` substitutes to a fixpoint, so the run must stay
// acyclic. Every constructor path that can introduce a binding performs the
// occurs check.
class Run {
 public:
  Run() = default;
  Run(std::initializer_list<Binding> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::vector<Binding>& bindings() const { return bindings_; }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  const Term* find(const BindingKey& key) const;
  const Term* find(const Term& var) const { return find(BindingKey{var}); }
  bool contains(const BindingKey& key) const { return find(key) != nullptr; }
  std::optional<std::size_t> position(const BindingKey& key) const;

  // Appends a binding. Throws std::logic_error if the key is already bound
  // or the binding would make the run cyclic.
  void bind(BindingKey key, Term value);

  // A copy restricted to bindings satisfying `keep`, order preserved.
  Run filter(const std::function<bool(const Binding&)>& keep) const;

  // A copy containing the first `n` bindings.
  Run prefix(std::size_t n) const;

  // Drops every binding after the first `n` (undo for backtracking).
  void truncate(std::size_t n);

  std::string to_string() const;

  friend bool operator==(const Run& a, const Run& b);

 private:
  std::vector<Binding> bindings_;
  std::map<BindingKey, std::size_t> index_;
};

// Substitutes bindings of `run` into `t` to a fixpoint, then folds ground
// arithmetic.
Term apply(const Run& run, const Term& t);

// Value of a key under `run`, fully resolved; nullopt if unbound.
std::optional<Term> lookup(const Run& run, const BindingKey& key);

// Every value rewritten to its fixpoint under the run itself.
Run resolve(const Run& run);

// Combines two runs.
// 
// The result holds the bindings of `older` followed by the new keys of
// `newer`, every value resolved through the union. When `newer`'s values
// mention none of `older`'s keys, apply(compose(newer, older), t) equals
// apply(newer, apply(older, t)) (this is how the prover extends a run with
// a fresh unifier). When they do, the union still resolves them, which is
// what chaining shifted induction steps onto a base run needs.
// 
// Throws CompositionConflict if both bind a key to different values or the
// union is cyclic.
Run compose(const Run& newer, const Run& older);

// Instantiates a generic induction-step run as step `step`: every w_r
// (keys and values) becomes w_{r + step*width}, every occurrence of
// `step_var` becomes the literal `step`, and location paths gain `step` as
// a final entry. Bindings keyed on `step_var` itself are dropped.
Run shift(const Run& delta, const Term& step_var, std::size_t step,
          std::size_t width);

// Undoes the renaming of a `steps`-step composed run: w_r becomes
// w_{r-(steps-1)*width}. Only the final step's conclusion witnesses survive
// (resulting index at least `width`); hypothesis-side and earlier indices
// are deleted.
// Location bindings of the final step lose their step suffix, other
// location bindings are deleted. Indexed variables inside values whose
// index would go negative are left as they are.
Run unshift(const Run& run, std::size_t steps, std::size_t width);

}  // namespace pind
