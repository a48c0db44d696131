#include "pind/prover.hpp"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <set>

namespace pind {

namespace {

constexpr std::size_t kNoDelta = std::numeric_limits<std::size_t>::max();

std::pair<Term, Formula> rename_clause(const DefinitionClause& clause, std::size_t serial) {
  std::set<std::string> bound;
  map_binders(clause.body, [&](const Binder& b, const std::vector<std::size_t>&) {
    bound.insert(b.var.name());
    return b;
  });
  auto fresh = [&](const Term& v) -> std::optional<Term> {
    if (v.kind() == TermKind::Var && !bound.count(v.name())) {
      return Term::indexed(v.name(), serial);
    }
    return std::nullopt;
  };
  Term head = map_variables(clause.head, fresh);
  Formula body = map_terms(clause.body, [&](const Term& t) { return map_variables(t, fresh); });
  return {head, body};
}

bool key_is_clause_local(const BindingKey& key) {
  const Term* t = std::get_if<Term>(&key);
  return t && is_clause_local(*t);
}

struct Draft;
using DraftPtr = std::shared_ptr<const Draft>;

struct Ctx;

// Sequents are rendered only for drafts that end up in the proof; until
// then a draft remembers the trail interval it depends on.
struct Pending {
  std::shared_ptr<const Ctx> in;
  Formula goal = Formula::top();
  std::size_t mark = 0;
  std::size_t end = 0;
};

struct Draft {
  ProofNode node;
  std::vector<DraftPtr> children;
  std::optional<Pending> pending;
};

// Newest first; shared between sibling contexts.
struct Guess {
  Term witness;
  std::shared_ptr<const Guess> next;
};
using Guesses = std::shared_ptr<const Guess>;

Guesses push(Guesses list, Term w) {
  return std::make_shared<const Guess>(Guess{std::move(w), std::move(list)});
}

struct Ctx {
  std::size_t delta_from = kNoDelta;  // first binding of the induction step
  Guesses guesses;                    // witnesses chosen by enclosing ∃ rules
  std::vector<Formula> premises;
  std::size_t width = 0;              // existentials per induction step
};

// Continuations see the subtree just built and whether it carries a total
// run; the run itself is the search's current trail.
using K = std::function<bool(DraftPtr, bool)>;

class Search {
 public:
  Search(const Program& program, std::size_t limit) : program_(program), limit_(limit) {}

  bool l1(const Formula& goal, const Ctx& ctx, const K& k);
  bool l0(const Formula& goal, const Ctx& ctx, const K& k);
  bool i0(const Formula& goal, const Ctx& ctx, const K& k);
  bool i1(const Formula& goal, const Ctx& ctx, const K& k);

  const std::string& diagnostic() const { return diagnostic_; }
  // Fills in the sequents of a draft built against the current trail.
  DraftPtr render(const DraftPtr& d);

 private:
  void tick() {
    if (++steps_ > limit_) throw SearchLimitExceeded(limit_);
  }
  bool fail(std::size_t mark, std::string why) {
    undo(mark);
    diagnostic_ = std::move(why);
    return false;
  }

  // `mark` is the trail length when the node's rule was entered.
  std::shared_ptr<Draft> make(Rule rule, std::string label, Mode mode, const Ctx& in,
                              std::size_t mark, const Formula& goal, bool failure,
                              std::vector<DraftPtr> children = {}) const;

  // Proves a subgoal on its own and keeps its first proof; the trail is
  // restored afterwards.
  template <typename Prove>
  std::optional<std::pair<DraftPtr, bool>> commit(Prove&& prove) {
    std::size_t mark = run_.size();
    std::optional<std::pair<DraftPtr, bool>> got;
    bool ok = prove([&](DraftPtr d, bool f) {
      got.emplace(render(d), f);
      return true;
    });
    undo(mark);
    if (!ok) return std::nullopt;
    return got;
  }

  bool left_cases(const Formula& goal, const Ctx& ctx, std::size_t premise,
                  const std::vector<std::pair<Term, Formula>>& cases, const Term& atom,
                  const K& k);
  bool induction(const Term& n, const Formula& goal, const Ctx& ctx, const K& k);

  void undo(std::size_t mark) {
    run_.truncate(mark);
    while (!visible_.empty() && visible_.back() >= mark) visible_.pop_back();
    synced_ = std::min(synced_, mark);
  }

  // Positions of the trail that are not clause variables, kept in step with
  // run_ so nodes can be rendered without scanning the whole trail.
  void sync() {
    for (; synced_ < run_.size(); ++synced_) {
      if (!key_is_clause_local(run_.bindings()[synced_].key)) visible_.push_back(synced_);
    }
  }

  // `t` resolved through the first `limit` bindings of the trail.
  Term view(const Term& t, std::size_t limit, bool locals_only) const {
    if (t.ground()) return eval_arith(t);
    return map_variables(t, [&](const Term& v) -> std::optional<Term> {
      if (locals_only && !is_clause_local(v)) return std::nullopt;
      auto at = run_.position(BindingKey{v});
      if (!at || *at >= limit) return std::nullopt;
      return view(run_.bindings()[*at].value, limit, locals_only);
    });
  }

  // Bindings [from, to) without clause variables, plus the guessed
  // witnesses, values resolved through the first `limit` bindings.
  Run project(std::size_t from, std::size_t to, const Guesses& guesses,
              std::size_t limit) const {
    Run out;
    to = std::min(to, run_.size());
    auto it = std::lower_bound(visible_.begin(), visible_.end(), from);
    for (; it != visible_.end() && *it < to; ++it) {
      const Binding& b = run_.bindings()[*it];
      out.bind(b.key, view(b.value, limit, false));
    }
    std::vector<Term> order;
    for (const Guess* g = guesses.get(); g; g = g->next.get()) order.push_back(g->witness);
    std::reverse(order.begin(), order.end());
    for (const Term& g : order) {
      if (out.contains(g)) continue;
      Term v = view(g, limit, false);
      if (!(v == g)) out.bind(g, v);
    }
    return out;
  }

  const Program& program_;
  std::size_t limit_;
  std::size_t steps_ = 0;
  FreshNames fresh_;
  std::string diagnostic_;
  Run run_;
  std::vector<std::size_t> visible_;
  std::size_t synced_ = 0;
};

std::shared_ptr<Draft> Search::make(Rule rule, std::string label, Mode mode, const Ctx& in,
                                    std::size_t mark, const Formula& goal, bool failure,
                                    std::vector<DraftPtr> children) const {
  auto d = std::make_shared<Draft>();
  d->node.rule = rule;
  d->node.label = std::move(label);
  d->node.failure = failure;
  d->node.sequent.mode = mode;
  d->children = std::move(children);
  d->pending = Pending{std::make_shared<const Ctx>(in), goal, mark, run_.size()};
  return d;
}

DraftPtr Search::render(const DraftPtr& d) {
  if (!d->pending) return d;
  sync();
  auto out = std::make_shared<Draft>(*d);
  const Pending& p = *out->pending;
  const Ctx& in = *p.in;
  ProofNode& n = out->node;
  const std::size_t limit = n.failure ? p.mark : p.end;
  bool step = n.sequent.mode == Mode::I0 || n.sequent.mode == Mode::I1;
  static const Guesses none;
  n.sequent.sigma = project(0, std::min(p.mark, in.delta_from), step ? none : in.guesses, limit);
  if (step) n.sequent.delta = project(in.delta_from, p.mark, in.guesses, limit);
  auto locals = [&](const Term& t) { return view(t, limit, true); };
  for (const Formula& f : in.premises) n.sequent.premises.push_back(map_terms(f, locals));
  n.sequent.goal = map_terms(p.goal, locals);
  if (!n.failure) n.result = project(step ? in.delta_from : 0, p.end, in.guesses, limit);
  for (auto& c : out->children) c = render(c);
  out->pending.reset();
  return out;
}

// ---------------------------------------------------------------------------
// level 1

bool Search::l1(const Formula& goal, const Ctx& ctx, const K& k) {
  tick();
  const std::size_t mark = run_.size();
  switch (goal.kind()) {
    case FormulaKind::Top:
      if (k(make(Rule::TopR, "true", Mode::L1, ctx, mark, goal, false), false)) return true;
      return fail(mark, "");

    case FormulaKind::Bot:
      return fail(mark, "false cannot be proved");

    case FormulaKind::Nat: {
      Term t = apply(run_, goal.term());
      if (t.is_nat()) {
        if (k(make(Rule::NatZeroR, "nat-R", Mode::L1, ctx, mark, goal, false), false)) {
          return true;
        }
        return fail(mark, "");
      }
      if (t.kind() == TermKind::Succ) {
        return l1(Formula::nat(t.arg(0)), ctx, [&](DraftPtr c, bool f) {
          return k(make(Rule::NatSuccR, "nat-R", Mode::L1, ctx, mark, goal, f, {c}), f);
        });
      }
      return fail(mark, "nat(" + t.to_string() + ") is not a numeral");
    }

    case FormulaKind::Atom: {
      Rigidity rigid{true, 0};
      for (const auto& clause : program_.clauses) {
        auto [head, body] = rename_clause(clause, fresh_.clause++);
        if (!unify(goal.term(), head, run_, rigid)) continue;
        bool ok = l1(body, ctx, [&](DraftPtr c, bool f) {
          return k(make(Rule::DefR, "defR", Mode::L1, ctx, mark, goal, f, {c}), f);
        });
        if (ok) return true;
        undo(mark);
      }
      return fail(mark, "no clause proves " + apply(run_, goal.term()).to_string());
    }

    case FormulaKind::And:
      return l1(goal.lhs(), ctx, [&](DraftPtr left, bool fl) {
        return l1(goal.rhs(), ctx, [&](DraftPtr right, bool fr) {
          bool f = fl || fr;
          return k(make(Rule::AndR, "and-R", Mode::L1, ctx, mark, goal, f, {left, right}), f);
        });
      });

    case FormulaKind::Implies:
    case FormulaKind::NatImplies: {
      bool nat = goal.kind() == FormulaKind::NatImplies;
      Ctx next = ctx;
      next.premises = {nat ? Formula::nat(goal.term()) : goal.lhs()};
      const Formula& consequent = nat ? goal.body() : goal.rhs();
      return l0(consequent, next, [&](DraftPtr c, bool f) {
        return k(make(nat ? Rule::NatImpR : Rule::ImpR, nat ? "nat-imp" : "imp-R", Mode::L1,
                      ctx, mark, goal, f, {c}),
                 f);
      });
    }

    case FormulaKind::Forall: {
      Term h = Term::eigen("h", fresh_.eigen++);
      const Binder& b = goal.binder();
      Formula body = substitute(goal.body(), b.var, h);
      bool guarded =
          goal.body().kind() == FormulaKind::NatImplies && goal.body().term() == b.var;
      return l1(body, ctx, [&](DraftPtr c, bool f) {
        auto d = make(Rule::ForallR, "forall-R", Mode::L1, ctx, mark, goal, f, {c});
        d->node.eigen = h;
        d->node.nat_guarded = guarded;
        d->node.binder = b;
        return k(d, f);
      });
    }

    case FormulaKind::Exists: {
      const Binder& b = goal.binder();
      Term w = b.slot ? Term::indexed("w", *b.slot) : Term::indexed("y", fresh_.witness++);
      Ctx next = ctx;
      next.guesses = push(next.guesses, w);
      Formula body = substitute(goal.body(), b.var, w);
      return l1(body, next, [&](DraftPtr c, bool f) {
        auto d = make(Rule::ExistsR, "exists-R", Mode::L1, ctx, mark, goal, f, {c});
        d->node.witness = w;
        d->node.binder = b;
        return k(d, f);
      });
    }
  }
  return fail(mark, "no rule applies to " + goal.to_string());
}

// ---------------------------------------------------------------------------
// level 0

bool Search::left_cases(const Formula& goal, const Ctx& ctx, std::size_t premise,
                        const std::vector<std::pair<Term, Formula>>& cases, const Term& atom,
                        const K& k) {
  const std::size_t mark = run_.size();
  std::vector<DraftPtr> children;
  std::vector<Run> thetas;
  bool failure = false;
  for (const auto& [head, body] : cases) {
    if (!unify(atom, head, run_)) continue;
    Run theta;
    for (std::size_t i = mark; i < run_.size(); ++i) {
      theta.bind(run_.bindings()[i].key, run_.bindings()[i].value);
    }
    Ctx next = ctx;
    next.premises[premise] = body;
    // Each case is closed on its own; later goals never see its bindings.
    auto got = commit([&](const K& keep) { return l0(goal, next, keep); });
    undo(mark);
    if (!got) return fail(mark, diagnostic_);
    children.push_back(got->first);
    thetas.push_back(std::move(theta));
    failure = failure || got->second;
  }
  auto d = make(Rule::DefL, "defL", Mode::L0, ctx, mark, goal, failure, std::move(children));
  d->node.thetas = std::move(thetas);
  if (k(d, failure)) return true;
  return fail(mark, "");
}

bool Search::l0(const Formula& goal, const Ctx& ctx, const K& k) {
  if (ctx.premises.empty()) return l1(goal, ctx, k);
  tick();
  const std::size_t mark = run_.size();
  const auto& ps = ctx.premises;

  for (const auto& p : ps) {
    if (p.kind() == FormulaKind::Bot) {
      if (k(make(Rule::BotL, "false-L", Mode::L0, ctx, mark, goal, false), false)) return true;
      return fail(mark, "");
    }
  }

  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Formula& p = ps[i];
    if (p.kind() != FormulaKind::Top && p.kind() != FormulaKind::And &&
        p.kind() != FormulaKind::Exists) {
      continue;
    }
    Ctx next = ctx;
    Rule rule;
    std::string label;
    switch (p.kind()) {
      case FormulaKind::Top:
        next.premises.erase(next.premises.begin() + i);
        rule = Rule::TopL;
        label = "true-L";
        break;
      case FormulaKind::And:
        next.premises[i] = p.rhs();
        next.premises.insert(next.premises.begin() + i, p.lhs());
        rule = Rule::AndL;
        label = "and-L";
        break;
      case FormulaKind::Exists:
        next.premises[i] =
            substitute(p.body(), p.binder().var, Term::indexed("y", fresh_.witness++));
        rule = Rule::ExistsL;
        label = "exists-L";
        break;
      default:
        continue;
    }
    return l0(goal, next, [&, rule, label](DraftPtr c, bool f) {
      return k(make(rule, label, Mode::L0, ctx, mark, goal, f, {c}), f);
    });
  }

  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].kind() != FormulaKind::Atom) continue;
    std::vector<std::pair<Term, Formula>> cases;
    for (const auto& clause : program_.clauses) cases.push_back(rename_clause(clause, fresh_.clause++));
    return left_cases(goal, ctx, i, cases, ps[i].term(), k);
  }

  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].kind() != FormulaKind::Nat) continue;
    Term t = apply(run_, ps[i].term());
    if (t.is_variable()) return induction(t, goal, ctx, k);
    // nat(0) := true.  nat(X+1) := nat(X).
    Term x = Term::indexed("X", fresh_.clause++);
    std::vector<std::pair<Term, Formula>> cases = {{Term::nat(0), Formula::top()},
                                                   {Term::succ(x), Formula::nat(x)}};
    return left_cases(goal, ctx, i, cases, t, k);
  }

  return fail(mark, "no left rule applies to " + ps.front().to_string());
}

bool Search::induction(const Term& n, const Formula& goal, const Ctx& ctx, const K& k) {
  const std::size_t mark = run_.size();
  if (!is_g_formula(goal) || contains_trivial_or_nat(goal)) {
    return fail(mark, "induction goal " + goal.to_string() +
                          " must be built from atoms, & and exists only");
  }
  std::size_t m = count_exists(goal);
  std::size_t slot = 0;
  Formula hyp = map_binders(goal, [&](const Binder& b, const std::vector<std::size_t>&) {
    Binder nb = b;
    nb.slot = slot++;
    return nb;
  });

  Ctx base = ctx;
  base.premises.clear();
  run_.bind(n, Term::nat(0));
  auto base_proof = commit([&](const K& keep) { return l1(hyp, base, keep); });
  undo(mark);
  if (!base_proof) return fail(mark, diagnostic_);
  auto base_root = std::make_shared<Draft>(*base_proof->first);
  base_root->node.label = "nat-0";

  Term j = Term::eigen("j", fresh_.step++);
  run_.bind(n, j);
  Ctx step;
  step.delta_from = run_.size();
  step.width = m;
  step.premises = {hyp};

  // G(n+1): binders primed, witnesses allocated after the hypothesis ones,
  // each tied to its position in the goal.
  std::vector<std::pair<Term, Term>> primes;
  slot = 0;
  Formula concl = map_binders(substitute(goal, n, Term::succ(n)),
                              [&](const Binder& b, const std::vector<std::size_t>& path) {
                                Binder nb = b;
                                nb.var = Term::var(b.var.name() + "'");
                                nb.slot = m + slot++;
                                nb.loc = LocKey{nb.var.name(), path};
                                primes.emplace_back(b.var, nb.var);
                                return nb;
                              });
  concl = map_terms(concl, [&](const Term& t) {
    return map_variables(t, [&](const Term& v) -> std::optional<Term> {
      for (const auto& [from, to] : primes) {
        if (v == from) return to;
      }
      return std::nullopt;
    });
  });

  auto step_proof = commit([&](const K& keep) { return i0(concl, step, keep); });
  undo(mark);
  if (!step_proof) return fail(mark, diagnostic_);

  auto d = make(Rule::Induction, "defL", Mode::L0, ctx, mark, goal, true,
                {base_root, step_proof->first});
  d->node.induction_var = n;
  d->node.step_var = j;
  d->node.width = m;
  if (k(d, true)) return true;
  return fail(mark, "");
}

// ---------------------------------------------------------------------------
// induction step

bool Search::i0(const Formula& goal, const Ctx& ctx, const K& k) {
  tick();
  const std::size_t mark = run_.size();
  const auto& ps = ctx.premises;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Formula& p = ps[i];
    if (p.kind() != FormulaKind::And && p.kind() != FormulaKind::Exists) continue;
    Ctx next = ctx;
    if (p.kind() == FormulaKind::And) {
      next.premises[i] = p.rhs();
      next.premises.insert(next.premises.begin() + i, p.lhs());
      return i0(goal, next, [&](DraftPtr c, bool f) {
        return k(make(Rule::StepAndL, "and-L", Mode::I0, ctx, mark, goal, f, {c}), f);
      });
    }
    if (p.kind() == FormulaKind::Exists) {
      const Binder& b = p.binder();
      Term w = b.slot ? Term::indexed("w", *b.slot) : Term::indexed("y", fresh_.witness++);
      if (!run_.contains(b.var)) run_.bind(b.var, w);
      next.premises[i] = substitute(p.body(), b.var, w);
      bool ok = i0(goal, next, [&](DraftPtr c, bool f) {
        return k(make(Rule::StepExistsL, "exists-L", Mode::I0, ctx, mark, goal, f, {c}), f);
      });
      if (ok) return true;
      return fail(mark, diagnostic_);
    }
  }
  // Only atoms remain: the first goal rule is still shown in i0.
  return i1(goal, ctx, [&](DraftPtr c, bool f) {
    auto d = std::make_shared<Draft>(*c);
    d->node.sequent.mode = Mode::I0;
    if (d->node.rule == Rule::StepExistsR) d->node.label = "exists-L";
    return k(d, f);
  });
}

bool Search::i1(const Formula& goal, const Ctx& ctx, const K& k) {
  tick();
  const std::size_t mark = run_.size();
  Rigidity rigid{true, ctx.width};
  switch (goal.kind()) {
    case FormulaKind::Top:
      if (k(make(Rule::StepTopR, "true", Mode::I1, ctx, mark, goal, false), false)) return true;
      return fail(mark, "");

    case FormulaKind::Atom: {
      for (const auto& hyp : ctx.premises) {
        if (hyp.kind() != FormulaKind::Atom) continue;
        if (!unify(goal.term(), hyp.term(), run_, rigid)) continue;
        if (k(make(Rule::StepHypothesis, "hyp", Mode::I1, ctx, mark, goal, false), false)) {
          return true;
        }
        undo(mark);
      }
      for (const auto& clause : program_.clauses) {
        auto [head, body] = rename_clause(clause, fresh_.clause++);
        if (!is_g_formula(body)) continue;
        if (!unify(goal.term(), head, run_, rigid)) continue;
        bool ok = i1(body, ctx, [&](DraftPtr c, bool f) {
          return k(make(Rule::StepDefR, "defR", Mode::I1, ctx, mark, goal, f, {c}), f);
        });
        if (ok) return true;
        undo(mark);
      }
      return fail(mark, "no hypothesis or clause matches " +
                            apply(run_, goal.term()).to_string() + " in the induction step");
    }

    case FormulaKind::And:
      return i1(goal.lhs(), ctx, [&](DraftPtr left, bool fl) {
        return i1(goal.rhs(), ctx, [&](DraftPtr right, bool fr) {
          bool f = fl || fr;
          return k(make(Rule::StepAndR, "and-R", Mode::I1, ctx, mark, goal, f, {left, right}),
                   f);
        });
      });

    case FormulaKind::Exists: {
      const Binder& b = goal.binder();
      Ctx next = ctx;
      Term w = b.slot ? Term::indexed("w", *b.slot) : Term::indexed("y", fresh_.witness++);
      if (b.loc && !run_.contains(*b.loc)) run_.bind(*b.loc, w);
      next.guesses = push(next.guesses, w);
      Formula body = substitute(goal.body(), b.var, w);
      bool ok = i1(body, next, [&](DraftPtr c, bool f) {
        auto d = make(Rule::StepExistsR, "exists-R", Mode::I1, ctx, mark, goal, f, {c});
        d->node.witness = w;
        d->node.binder = b;
        return k(d, f);
      });
      if (ok) return true;
      return fail(mark, diagnostic_);
    }

    default:
      return fail(mark, "no induction-step rule for " + goal.to_string());
  }
}

void flatten(const DraftPtr& d, std::vector<ProofNode>& out) {
  std::vector<std::size_t> at;
  for (const auto& c : d->children) {
    flatten(c, out);
    at.push_back(out.size() - 1);
  }
  ProofNode n = d->node;
  for (std::size_t i : at) n.child_distances.push_back(out.size() - i);
  out.push_back(std::move(n));
}

struct Job {
  std::function<void()> body;
  std::exception_ptr error;
};

void* run_job(void* arg) {
  auto* job = static_cast<Job*>(arg);
  try {
    job->body();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

// Deep searches recurse once per rule application; give them room.
void run_with_stack(std::size_t stack_size, std::function<void()> body) {
  Job job{std::move(body), nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_size);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, run_job, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    run_job(&job);
  } else {
    pthread_join(thread, nullptr);
  }
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace

std::vector<ClauseInstance> enumerate_definitions(const Term& atom, const Run& run,
                                                  const Program& program, FreshNames& fresh,
                                                  Rigidity rigid) {
  std::vector<ClauseInstance> out;
  if (atom.kind() != TermKind::Compound) return out;
  for (std::size_t i = 0; i < program.clauses.size(); ++i) {
    auto [head, body] = rename_clause(program.clauses[i], fresh.clause++);
    Run extended = run;
    if (!unify(atom, head, extended, rigid)) continue;
    Run theta = extended.filter([&](const Binding& b) { return !run.contains(b.key); });
    out.push_back({std::move(theta), std::move(body), i});
  }
  return out;
}

ProofTree Prover::prove(const Formula& goal) const {
  std::vector<ProofNode> nodes;
  run_with_stack(options_.stack_size, [&] {
    Search search(program_, options_.node_limit);
    DraftPtr root;
    bool ok = search.l1(goal, Ctx{}, [&](DraftPtr d, bool) {
      root = search.render(d);
      return true;
    });
    if (!ok) {
      std::string why = search.diagnostic();
      throw ProofFailure(why.empty() ? "proof failed" : "proof failed: " + why);
    }
    flatten(root, nodes);
  });
  return ProofTree(std::move(nodes));
}

}  // namespace pind
