#include "pind/term.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace pind {

Term Term::make(Node node) {
  return Term(std::make_shared<const Node>(std::move(node)));
}

Term Term::nat(Natural value) {
  Node n{TermKind::Nat, std::move(value), {}, 0, {}, true};
  return make(std::move(n));
}

Term Term::var(std::string name) {
  return make(Node{TermKind::Var, 0, std::move(name), 0, {}, false});
}

Term Term::indexed(std::string family, std::size_t index) {
  return make(Node{TermKind::Indexed, 0, std::move(family), index, {}, false});
}

Term Term::eigen(std::string family, std::size_t serial) {
  return make(Node{TermKind::Eigen, 0, std::move(family), serial, {}, false});
}

namespace {
bool all_ground(const std::vector<Term>& args) {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& a) { return a.ground(); });
}
}  // namespace

Term Term::succ(Term arg) {
  bool g = arg.ground();
  return make(Node{TermKind::Succ, 0, {}, 0, {std::move(arg)}, g});
}

Term Term::add(Term lhs, Term rhs) {
  std::vector<Term> args{std::move(lhs), std::move(rhs)};
  bool g = all_ground(args);
  return make(Node{TermKind::Add, 0, {}, 0, std::move(args), g});
}

Term Term::mul(Term lhs, Term rhs) {
  std::vector<Term> args{std::move(lhs), std::move(rhs)};
  bool g = all_ground(args);
  return make(Node{TermKind::Mul, 0, {}, 0, std::move(args), g});
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  bool g = all_ground(args);
  return make(Node{TermKind::Compound, 0, std::move(functor), 0,
                   std::move(args), g});
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case TermKind::Nat:
      if (a.value() < b.value()) return std::strong_ordering::less;
      if (b.value() < a.value()) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    case TermKind::Var:
    case TermKind::Indexed:
    case TermKind::Eigen:
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      return a.index() <=> b.index();
    default:
      break;
  }
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

// 1: sum, 2: product, 3: primary
void render(std::ostream& os, const Term& t, int context) {
  switch (t.kind()) {
    case TermKind::Nat:
      os << t.value();
      return;
    case TermKind::Var:
      os << t.name();
      return;
    case TermKind::Indexed:
      os << t.name() << '_' << t.index();
      return;
    case TermKind::Eigen:
      // h_n always carries its serial; other families drop a zero serial.
      os << t.name();
      if (t.name() == "h" || t.index() != 0) os << '_' << t.index();
      return;
    case TermKind::Succ:
      if (context > 1) os << '(';
      render(os, t.arg(0), 1);
      os << "+1";
      if (context > 1) os << ')';
      return;
    case TermKind::Add: {
      if (context > 1) os << '(';
      render(os, t.arg(0), 1);
      os << '+';
      const Term& r = t.arg(1);
      // A bare `+1` reads back as a successor.
      bool literal_one = r.is_nat() && r.value() == 1;
      if (literal_one) os << '(';
      render(os, r, literal_one ? 1 : 2);
      if (literal_one) os << ')';
      if (context > 1) os << ')';
      return;
    }
    case TermKind::Mul:
      if (context > 2) os << '(';
      render(os, t.arg(0), 2);
      os << '*';
      render(os, t.arg(1), 3);
      if (context > 2) os << ')';
      return;
    case TermKind::Compound:
      os << t.name();
      if (!t.args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) os << ',';
          render(os, t.arg(i), 1);
        }
        os << ')';
      }
      return;
  }
}

}  // namespace

std::string Term::to_string() const {
  std::ostringstream os;
  render(os, *this, 1);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  render(os, t, 1);
  return os;
}

Term fold_node(const Term& t) {
  switch (t.kind()) {
    case TermKind::Succ:
      if (t.arg(0).is_nat()) return Term::nat(Natural(t.arg(0).value() + 1));
      return t;
    case TermKind::Add:
      if (t.arg(0).is_nat() && t.arg(1).is_nat()) {
        return Term::nat(Natural(t.arg(0).value() + t.arg(1).value()));
      }
      return t;
    case TermKind::Mul:
      if (t.arg(0).is_nat() && t.arg(1).is_nat()) {
        return Term::nat(Natural(t.arg(0).value() * t.arg(1).value()));
      }
      return t;
    default:
      return t;
  }
}

Term eval_arith(const Term& t) {
  switch (t.kind()) {
    case TermKind::Nat:
    case TermKind::Var:
    case TermKind::Indexed:
    case TermKind::Eigen:
      return t;
    case TermKind::Succ:
      return fold_node(Term::succ(eval_arith(t.arg(0))));
    case TermKind::Add:
      return fold_node(Term::add(eval_arith(t.arg(0)), eval_arith(t.arg(1))));
    case TermKind::Mul:
      return fold_node(Term::mul(eval_arith(t.arg(0)), eval_arith(t.arg(1))));
    case TermKind::Compound: {
      if (t.args().empty()) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(eval_arith(a));
      return Term::compound(t.name(), std::move(args));
    }
  }
  return t;
}

bool occurs_in(const Term& v, const Term& t) {
  if (t.ground()) return false;
  if (t.is_variable()) return t == v;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs_in(v, a); });
}

void collect_variables(const Term& t, std::vector<Term>& out) {
  if (t.ground()) return;
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

}  // namespace pind
