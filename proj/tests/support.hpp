#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pind/executor.hpp"
#include "pind/parser.hpp"
#include "pind/prover.hpp"
#include "pind/run.hpp"
#include "pind/term.hpp"

namespace pind::support {

inline const char* kFactGoal = "forall X. nat(X) => exists Y. fact(X,Y)";
inline const char* kPlusGoal = "forall N. nat(N) => exists Z. plus(N,2,Z)";

inline std::string source_path(const std::string& rel) {
  return std::string(PIND_SOURCE_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Program load_program(const std::string& rel) {
  return parse_program(slurp(source_path(rel)));
}

inline ProofTree prove_text(const Program& p, const std::string& goal, std::size_t limit = 100000) {
  return Prover(p, ProverOptions{limit}).prove(parse_goal(goal));
}

inline Transcript play(const ProofTree& tree, std::vector<std::string> choices) {
  ScriptedChoices src(std::move(choices));
  return execute(tree, src);
}

// Witness printed last, or "" if none.
inline std::string last_witness(const Transcript& t) {
  auto w = t.witnesses();
  return w.empty() ? std::string() : w.back().value;
}

inline Natural factorial(unsigned k) {
  Natural r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

// --- random generators -------------------------------------------------------

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Ground arithmetic over small literals.
  Term ground_arith(int depth) {
    if (depth <= 1 || coin(0.25)) return Term::nat(below(6));
    switch (below(3)) {
      case 0: return Term::succ(ground_arith(depth - 1));
      case 1: return Term::add(ground_arith(depth - 1), ground_arith(depth - 1));
      default: return Term::mul(ground_arith(depth - 1), ground_arith(depth - 1));
    }
  }

  // A term over the given variables, constants a/b, f/1, g/2 and small numerals.
  Term term(const std::vector<Term>& vars, int depth, bool arithmetic = true) {
    if (depth <= 1 || coin(0.3)) {
      std::size_t pick = below(vars.size() + 3);
      if (pick < vars.size()) return vars[pick];
      if (pick == vars.size()) return Term::nat(below(4));
      return Term::compound(pick == vars.size() + 1 ? "a" : "b");
    }
    switch (below(arithmetic ? 5 : 2)) {
      case 0: return Term::compound("f", {term(vars, depth - 1, arithmetic)});
      case 1:
        return Term::compound("g", {term(vars, depth - 1, arithmetic), term(vars, depth - 1, arithmetic)});
      case 2: return Term::succ(term(vars, depth - 1, arithmetic));
      case 3: return Term::add(term(vars, depth - 1, arithmetic), term(vars, depth - 1, arithmetic));
      default: return Term::mul(term(vars, depth - 1, arithmetic), term(vars, depth - 1, arithmetic));
    }
  }

  // An acyclic run over `keys`: the i-th chosen key only mentions
  // variables from `later` pools, so substitution terminates.
  Run triangular(const std::vector<Term>& keys, const std::vector<Term>& extra, double density) {
    Run r;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!coin(density)) continue;
      std::vector<Term> pool(keys.begin() + i + 1, keys.end());
      pool.insert(pool.end(), extra.begin(), extra.end());
      r.bind(keys[i], term(pool, 3));
    }
    return r;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

// Independent big-step evaluator for ground arithmetic.
inline unsigned __int128 oracle_eval(const Term& t) {
  switch (t.kind()) {
    case TermKind::Nat: return static_cast<unsigned __int128>(t.value().convert_to<unsigned long long>());
    case TermKind::Succ: return oracle_eval(t.arg(0)) + 1;
    case TermKind::Add: return oracle_eval(t.arg(0)) + oracle_eval(t.arg(1));
    case TermKind::Mul: return oracle_eval(t.arg(0)) * oracle_eval(t.arg(1));
    default: return 0;
  }
}

inline std::string u128_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  return s;
}

// Evaluates an arithmetic term with `j` and w_0 set to given values.
inline Natural eval_with(const Term& t, const Term& j, unsigned jv, unsigned w0) {
  Run r;
  r.bind(j, Term::nat(jv));
  r.bind(Term::indexed("w", 0), Term::nat(w0));
  Term v = apply(r, t);
  return v.is_nat() ? v.value() : Natural(-1);
}

// --- property suites shared by unit tests and the acceptance binary ----------

struct PropertyReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
};

inline PropertyReport check_eval_arith(std::size_t n, unsigned seed = 1) {
  Gen g(seed);
  PropertyReport rep;
  for (std::size_t i = 0; i < n; ++i, ++rep.cases) {
    Term t = g.ground_arith(6);
    Term v = eval_arith(t);
    std::string want = u128_string(oracle_eval(t));
    if (!v.is_nat() || v.to_string() != want) rep.fail(t.to_string() + " -> " + v.to_string());
  }
  return rep;
}

inline std::vector<Term> var_pool(const char* prefix, std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Term::var(prefix + std::to_string(i)));
  return out;
}

inline PropertyReport check_mgu(std::size_t n, unsigned seed = 2) {
  Gen g(seed);
  PropertyReport rep;
  auto vars = var_pool("X", 4);
  std::size_t unified = 0;
  while (rep.cases < n) {
    ++rep.cases;
    Term a = g.term(vars, 4);
    Term b = g.coin(0.6) ? apply(g.triangular(vars, {}, 0.5), a) : g.term(vars, 4);
    if (g.coin(0.3)) b = apply(g.triangular(vars, {}, 0.4), b);
    auto out = mgu(a, b);
    if (!out) continue;
    ++unified;
    const Run& theta = *out;
    Term ta = apply(theta, a);
    Term tb = apply(theta, b);
    if (!(ta == tb)) rep.fail("unsound: " + a.to_string() + " ~ " + b.to_string());
    for (const Term& t : {a, b}) {
      if (!(apply(theta, apply(theta, t)) == apply(theta, t))) {
        rep.fail("not idempotent on " + t.to_string());
      }
    }
  }
  if (unified < n / 4) rep.fail("too few unifiable pairs: " + std::to_string(unified));
  return rep;
}

inline PropertyReport check_compose(std::size_t n, unsigned seed = 3) {
  Gen g(seed);
  PropertyReport rep;
  auto all = var_pool("V", 8);
  for (std::size_t i = 0; i < n; ++i, ++rep.cases) {
    std::shuffle(all.begin(), all.end(), g.engine());
    // older binds the first half, newer the second; newer's values avoid
    // older's keys.
    std::vector<Term> older_keys(all.begin(), all.begin() + 4);
    std::vector<Term> newer_keys(all.begin() + 4, all.end());
    Run older = g.triangular(older_keys, newer_keys, 0.6);
    Run newer = g.triangular(newer_keys, {Term::var("free")}, 0.6);
    Run c;
    try {
      c = compose(newer, older);
    } catch (const CompositionConflict& e) {
      rep.fail(std::string("conflict: ") + e.what());
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      Term t = g.term(all, 4);
      if (!(apply(c, t) == apply(newer, apply(older, t)))) {
        rep.fail("compose(" + newer.to_string() + ", " + older.to_string() + ") on " + t.to_string());
      }
    }
  }
  return rep;
}

inline PropertyReport check_shift_unshift(std::size_t n, unsigned seed = 4) {
  Gen g(seed);
  PropertyReport rep;
  Term j = Term::eigen("j", 0);
  for (std::size_t i = 0; i < n; ++i, ++rep.cases) {
    std::size_t m = 1 + g.below(3);
    std::size_t k = 1 + g.below(5);
    std::vector<Term> witnesses;
    for (std::size_t r = 0; r < 2 * m; ++r) witnesses.push_back(Term::indexed("w", r));
    std::shuffle(witnesses.begin(), witnesses.end(), g.engine());
    std::vector<Term> keys(witnesses.begin(), witnesses.begin() + m);
    keys.push_back(Term::var("Y"));
    std::vector<Term> leaves(witnesses.begin() + m, witnesses.end());
    leaves.push_back(j);
    Run delta = g.triangular(keys, leaves, 0.7);
    for (std::size_t s = 0; s < m; ++s) {
      if (g.coin(0.5)) delta.bind(LocKey{"Z" + std::to_string(s), {s}}, g.term(leaves, 3));
    }
    if (g.coin(0.3)) delta.bind(j, Term::nat(7));

    Run got = unshift(shift(delta, j, k - 1, m), k, m);
    Term jk = Term::nat(static_cast<unsigned long long>(k - 1));
    Run want;
    for (const auto& b : delta) {
      if (const Term* v = std::get_if<Term>(&b.key)) {
        if (*v == j) continue;
        if (v->is_witness() && v->index() < m) continue;
      }
      want.bind(b.key, map_variables(b.value, [&](const Term& v) -> std::optional<Term> {
        if (v == j) return jk;
        return std::nullopt;
      }));
    }
    if (!(got == want)) {
      rep.fail("delta " + delta.to_string() + " k=" + std::to_string(k) + " m=" +
               std::to_string(m) + ": got " + got.to_string() + " want " + want.to_string());
    }
  }
  return rep;
}

// --- generated program corpus --------------------------------------------------

struct CorpusCase {
  std::string program;
  std::string goal;
};

inline std::vector<CorpusCase> program_corpus(std::size_t n, unsigned seed = 5) {
  Gen g(seed);
  const std::vector<std::string> heads0 = {"0", "X+1", "a", "X"};
  const std::vector<std::string> args = {"0", "1", "X", "Y", "X+1", "Y+1", "X*Y+Y", "X+Y", "a"};
  std::vector<CorpusCase> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream prog;
    std::size_t nclauses = 1 + g.below(4);
    for (std::size_t c = 0; c < nclauses; ++c) {
      const char* pred = g.coin(0.6) ? "p" : "q";
      std::string h1 = heads0[g.below(heads0.size())];
      std::string h2 = args[g.below(args.size())];
      prog << pred << '(' << h1 << ", " << h2 << ") := ";
      switch (g.below(4)) {
        case 0: prog << "true"; break;
        case 1: prog << "p(X, Y)"; break;
        case 2: prog << "q(X, Y) & p(X, Y)"; break;
        default: prog << "exists Z. p(X, Z)"; break;
      }
      prog << ".\n";
    }
    std::string goal;
    switch (g.below(5)) {
      case 0: goal = "forall X. nat(X) => exists Y. p(X, Y)"; break;
      case 1: goal = "exists Y. p(" + std::to_string(g.below(4)) + ", Y)"; break;
      case 2: goal = "forall X. p(X, 0) => q(X, 0)"; break;
      case 3: goal = "forall X. nat(X) => exists Y. exists Z. p(X, Y) & q(X, Z)"; break;
      default: goal = "p(a, a) & exists Y. q(1, Y)"; break;
    }
    out.push_back({prog.str(), goal});
  }
  // Known-provable shapes.
  out.push_back({slurp(source_path("programs/fact.pig")), kFactGoal});
  out.push_back({slurp(source_path("programs/plus.pig")), kPlusGoal});
  out.push_back({"even(0) := true.\neven(X+1+1) := even(X).\n", "forall X. even(X) => even(X+1+1)"});
  return out;
}

}  // namespace pind::support
