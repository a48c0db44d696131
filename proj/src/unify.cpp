#include "pind/unify.hpp"

namespace pind {

namespace {

// `t` with bound clause variables replaced, transitively.
Term follow_locals(const Run& run, const Term& t) {
  if (t.ground()) return eval_arith(t);
  return map_variables(t, [&](const Term& v) -> std::optional<Term> {
    if (!is_clause_local(v)) return std::nullopt;
    if (const Term* value = run.find(v)) return follow_locals(run, *value);
    return std::nullopt;
  });
}

struct Unifier {
  Run& run;
  Rigidity rigid;

  bool bindable(const Term& t) const {
    if (!t.is_variable()) return false;
    if (rigid(t)) return false;
    return run.find(t) == nullptr;
  }

  bool bind(const Term& var, const Term& value) {
    Term full = apply(run, value);
    if (full == var) return true;
    if (occurs_in(var, full)) return false;
    run.bind(var, follow_locals(run, value));
    return true;
  }

  bool operator()(const Term& lhs, const Term& rhs) {
    Term a = eval_arith(lhs);
    Term b = eval_arith(rhs);
    if (a == b) return true;

    if (bindable(a)) return bind(a, b);
    if (bindable(b)) return bind(b, a);
    if (a.is_variable()) {
      if (const Term* v = run.find(a)) return (*this)(*v, b);
    }
    if (b.is_variable()) {
      if (const Term* v = run.find(b)) return (*this)(a, *v);
    }

    if (a.kind() == b.kind()) {
      switch (a.kind()) {
        case TermKind::Succ:
        case TermKind::Add:
        case TermKind::Mul:
          if (structural(a, b)) return true;
          break;
        case TermKind::Compound:
          return a.name() == b.name() && structural(a, b);
        default:
          return false;  // distinct literals or rigid variables
      }
    }

    if (a.is_nat() && b.kind() == TermKind::Succ) return nat_succ(a, b);
    if (b.is_nat() && a.kind() == TermKind::Succ) return nat_succ(b, a);

    // Arithmetic may only become comparable once bound variables are
    // substituted in.
    if (a.is_arithmetic() || b.is_arithmetic()) {
      Term ra = apply(run, a);
      Term rb = apply(run, b);
      if (!(ra == a) || !(rb == b)) return (*this)(ra, rb);
    }
    return false;
  }

  bool structural(const Term& a, const Term& b) {
    if (a.args().size() != b.args().size()) return false;
    std::size_t mark = run.size();
    for (std::size_t i = 0; i < a.args().size(); ++i) {
      if (!(*this)(a.arg(i), b.arg(i))) {
        run.truncate(mark);
        return false;
      }
    }
    return true;
  }

  bool nat_succ(const Term& n, const Term& s) {
    if (n.value() == 0) return false;
    return (*this)(Term::nat(Natural(n.value() - 1)), s.arg(0));
  }
};

}  // namespace

bool unify(const Term& a, const Term& b, Run& run, Rigidity rigid) {
  std::size_t mark = run.size();
  if (Unifier{run, rigid}(a, b)) return true;
  run.truncate(mark);
  return false;
}

UnifyOutcome mgu(const Term& a, const Term& b) {
  Run run;
  if (!unify(a, b, run)) return std::nullopt;
  return run;
}

}  // namespace pind
