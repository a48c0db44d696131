#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pind {

using Natural = boost::multiprecision::cpp_int;

enum class TermKind {
  Nat,       // natural-number literal
  Var,       // source-level variable
  Indexed,   // family_index, e.g. w_0, y_3, X_7 (renamed clause variable)
  Eigen,     // eigenvariable (h_0 from forall-R, j from the induction step)
  Succ,      // t+1
  Add,
  Mul,
  Compound,  // functor(args...); constants are zero-arity compounds
};

// Immutable first-order term with natural-number arithmetic.
// 
// Terms are cheap to copy (shared structure) and compare structurally.
class Term {
 public:
  static Term nat(Natural value);
  static Term nat(unsigned long long value) { return nat(Natural(value)); }
  static Term var(std::string name);
  static Term indexed(std::string family, std::size_t index);
  static Term eigen(std::string family, std::size_t serial);
  static Term succ(Term arg);
  static Term add(Term lhs, Term rhs);
  static Term mul(Term lhs, Term rhs);
  static Term compound(std::string functor, std::vector<Term> args = {});

  TermKind kind() const { return node_->kind; }
  const Natural& value() const { return node_->value; }
  // Variable name, indexed/eigen family, or functor.
  const std::string& name() const { return node_->name; }
  std::size_t index() const { return node_->index; }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  bool is_variable() const {
    auto k = kind();
    return k == TermKind::Var || k == TermKind::Indexed || k == TermKind::Eigen;
  }
  bool is_arithmetic() const {
    auto k = kind();
    return k == TermKind::Succ || k == TermKind::Add || k == TermKind::Mul;
  }
  bool is_nat() const { return kind() == TermKind::Nat; }
  // True when no variable occurs anywhere in the term.
  bool ground() const { return node_->ground; }
  // Witness family used for induction-step existentials.
  bool is_witness(const std::string& family = "w") const {
    return kind() == TermKind::Indexed && name() == family;
  }

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind;
    Natural value;
    std::string name;
    std::size_t index = 0;
    std::vector<Term> args;
    bool ground = false;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Node node);

  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

// Folds ground arithmetic subterms to literals; leaves the rest alone.
Term eval_arith(const Term& t);
// Folds one arithmetic node whose arguments are already folded.
Term fold_node(const Term& t);

// True if `v` occurs in `t`.
bool occurs_in(const Term& v, const Term& t);

// Collects every variable of `t` (left to right, duplicates removed).
void collect_variables(const Term& t, std::vector<Term>& out);

// Rebuilds `t` bottom-up, replacing each variable by `fn(var)` when it
// returns a value. Arithmetic is re-folded afterwards.
template <typename Fn>
Term map_variables(const Term& t, Fn&& fn);

// Renamed clause variables keep their source name as family (upper case or
// '_'); they are local to one clause instance and never appear in
// user-visible runs.
inline bool is_clause_local(const Term& t) {
  return t.kind() == TermKind::Indexed && !t.name().empty() &&
         ((t.name()[0] >= 'A' && t.name()[0] <= 'Z') || t.name()[0] == '_');
}

// ---------------------------------------------------------------------------

template <typename Fn>
Term map_variables(const Term& t, Fn&& fn) {
  switch (t.kind()) {
    case TermKind::Nat:
      return t;
    case TermKind::Var:
    case TermKind::Indexed:
    case TermKind::Eigen: {
      std::optional<Term> r = fn(t);
      return r ? *r : t;
    }
    case TermKind::Succ:
      return fold_node(Term::succ(map_variables(t.arg(0), fn)));
    case TermKind::Add:
      return fold_node(
          Term::add(map_variables(t.arg(0), fn), map_variables(t.arg(1), fn)));
    case TermKind::Mul:
      return fold_node(
          Term::mul(map_variables(t.arg(0), fn), map_variables(t.arg(1), fn)));
    case TermKind::Compound: {
      if (t.ground()) return eval_arith(t);
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(map_variables(a, fn));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

}  // namespace pind
