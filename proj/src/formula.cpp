#include "pind/formula.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace pind {

Formula Formula::top() {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Top, {}, {}, {}}));
}

Formula Formula::bot() {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Bot, {}, {}, {}}));
}

Formula Formula::nat(Term arg) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::Nat, std::move(arg), {}, {}}));
}

Formula Formula::atom(Term atom) {
  return Formula(
      std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(atom), {}, {}}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::And, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::exists(Binder binder, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Exists, {}, std::move(binder), {std::move(body)}}));
}

Formula Formula::forall(Binder binder, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Forall, {}, std::move(binder), {std::move(body)}}));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Implies, {}, {}, {std::move(antecedent), std::move(consequent)}}));
}

Formula Formula::nat_implies(Term var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::NatImplies, std::move(var), {}, {std::move(body)}}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  const auto& na = *a.node_;
  const auto& nb = *b.node_;
  if (na.term.has_value() != nb.term.has_value()) return false;
  if (na.term && !(*na.term == *nb.term)) return false;
  if (na.binder.has_value() != nb.binder.has_value()) return false;
  if (na.binder && !(na.binder->var == nb.binder->var)) return false;
  if (na.children.size() != nb.children.size()) return false;
  for (std::size_t i = 0; i < na.children.size(); ++i) {
    if (!(na.children[i] == nb.children[i])) return false;
  }
  return true;
}

namespace {

bool needs_parens_in_conj(const Formula& f) {
  auto k = f.kind();
  return k == FormulaKind::Exists || k == FormulaKind::Forall ||
         k == FormulaKind::Implies || k == FormulaKind::NatImplies;
}

void render(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Top:
      os << "true";
      return;
    case FormulaKind::Bot:
      os << "false";
      return;
    case FormulaKind::Nat:
      os << "nat(" << f.term() << ')';
      return;
    case FormulaKind::Atom:
      os << f.term();
      return;
    case FormulaKind::And: {
      bool lp = needs_parens_in_conj(f.lhs());
      bool rp = needs_parens_in_conj(f.rhs()) || f.rhs().kind() == FormulaKind::And;
      if (lp) os << '(';
      render(os, f.lhs());
      if (lp) os << ')';
      os << " & ";
      if (rp) os << '(';
      render(os, f.rhs());
      if (rp) os << ')';
      return;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      os << (f.kind() == FormulaKind::Exists ? "exists " : "forall ")
         << f.binder().var << ". ";
      render(os, f.body());
      return;
    case FormulaKind::Implies: {
      bool lp = needs_parens_in_conj(f.lhs());
      if (lp) os << '(';
      render(os, f.lhs());
      if (lp) os << ')';
      os << " => ";
      render(os, f.rhs());
      return;
    }
    case FormulaKind::NatImplies:
      os << "nat(" << f.term() << ") => ";
      render(os, f.body());
      return;
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::ostringstream os;
  render(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  render(os, f);
  return os;
}

bool is_g_formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Forall:
    case FormulaKind::Implies:
    case FormulaKind::NatImplies:
      return false;
    case FormulaKind::And:
      return is_g_formula(f.lhs()) && is_g_formula(f.rhs());
    case FormulaKind::Exists:
      return is_g_formula(f.body());
    default:
      return true;
  }
}

Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Nat:
      return Formula::nat(fn(f.term()));
    case FormulaKind::Atom:
      return Formula::atom(fn(f.term()));
    case FormulaKind::And:
      return Formula::conj(map_terms(f.lhs(), fn), map_terms(f.rhs(), fn));
    case FormulaKind::Exists:
      return Formula::exists(f.binder(), map_terms(f.body(), fn));
    case FormulaKind::Forall:
      return Formula::forall(f.binder(), map_terms(f.body(), fn));
    case FormulaKind::Implies:
      return Formula::implies(map_terms(f.lhs(), fn), map_terms(f.rhs(), fn));
    case FormulaKind::NatImplies:
      return Formula::nat_implies(fn(f.term()), map_terms(f.body(), fn));
  }
  return f;
}

Formula substitute(const Formula& f, const Term& var, const Term& value) {
  return map_terms(f, [&](const Term& t) {
    return map_variables(t, [&](const Term& v) -> std::optional<Term> {
      if (v == var) return value;
      return std::nullopt;
    });
  });
}

Formula apply(const Run& run, const Formula& f) {
  if (run.empty()) return f;
  return map_terms(f, [&](const Term& t) { return apply(run, t); });
}

Formula map_binders(
    const Formula& f,
    const std::function<Binder(const Binder&, const std::vector<std::size_t>&)>& fn,
    std::vector<std::size_t> path) {
  auto child = [&](std::size_t i) {
    auto p = path;
    p.push_back(i);
    return p;
  };
  switch (f.kind()) {
    case FormulaKind::And:
      return Formula::conj(map_binders(f.lhs(), fn, child(0)),
                           map_binders(f.rhs(), fn, child(1)));
    case FormulaKind::Exists:
      return Formula::exists(fn(f.binder(), path),
                             map_binders(f.body(), fn, child(0)));
    case FormulaKind::Forall:
      return Formula::forall(fn(f.binder(), path),
                             map_binders(f.body(), fn, child(0)));
    case FormulaKind::Implies:
      return Formula::implies(map_binders(f.lhs(), fn, child(0)),
                              map_binders(f.rhs(), fn, child(1)));
    case FormulaKind::NatImplies:
      return Formula::nat_implies(f.term(), map_binders(f.body(), fn, child(0)));
    default:
      return f;
  }
}

std::size_t count_exists(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Implies:
      return count_exists(f.lhs()) + count_exists(f.rhs());
    case FormulaKind::Exists:
      return 1 + count_exists(f.body());
    case FormulaKind::Forall:
    case FormulaKind::NatImplies:
      return count_exists(f.body());
    default:
      return 0;
  }
}

bool contains_trivial_or_nat(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bot:
    case FormulaKind::Nat:
    case FormulaKind::NatImplies:
      return true;
    case FormulaKind::Atom:
      return false;
    case FormulaKind::And:
    case FormulaKind::Implies:
      return contains_trivial_or_nat(f.lhs()) || contains_trivial_or_nat(f.rhs());
    default:
      return contains_trivial_or_nat(f.body());
  }
}

void collect_predicates(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (std::find(out.begin(), out.end(), f.term().name()) == out.end()) {
        out.push_back(f.term().name());
      }
      return;
    case FormulaKind::And:
    case FormulaKind::Implies:
      collect_predicates(f.lhs(), out);
      collect_predicates(f.rhs(), out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::NatImplies:
      collect_predicates(f.body(), out);
      return;
    default:
      return;
  }
}

void collect_variables(const Formula& f, std::vector<Term>& out) {
  map_terms(f, [&](const Term& t) {
    collect_variables(t, out);
    return t;
  });
}

}  // namespace pind
