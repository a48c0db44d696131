#include <gtest/gtest.h>

#include <set>

#include "pind/prover.hpp"
#include "support.hpp"

using namespace pind;
using namespace pind::support;

namespace {

Program fact_program() { return load_program("programs/fact.pig"); }

std::vector<std::string> labels_top_down(const ProofTree& t) {
  std::vector<std::string> out;
  for (auto it = t.nodes().rbegin(); it != t.nodes().rend(); ++it) out.push_back(it->label);
  return out;
}

}  // namespace

TEST(Golden, FactorialTree) {
  ProofTree t = prove_text(fact_program(), kFactGoal);
  EXPECT_EQ(t.dump(), slurp(source_path("tests/golden/factorial_tree.txt")));
}

TEST(Golden, FactorialShape) {
  ProofTree t = prove_text(fact_program(), kFactGoal);
  ASSERT_EQ(t.size(), 10u);
  EXPECT_TRUE(t.validate().empty());
  std::vector<std::string> want = {"forall-R", "nat-imp", "defL",  "exists-L", "exists-L",
                                   "defR",     "hyp",     "nat-0", "defR",     "true"};
  EXPECT_EQ(labels_top_down(t), want);

  const ProofNode& root = t.root();
  EXPECT_TRUE(root.failure);
  EXPECT_EQ(root.child_distances, std::vector<std::size_t>{1});

  const ProofNode& ind = t.at(7);
  EXPECT_EQ(ind.rule, Rule::Induction);
  EXPECT_EQ(ind.child_distances, (std::vector<std::size_t>{5, 1}));
  EXPECT_TRUE(ind.failure);

  const ProofNode& base = t.at(2);
  EXPECT_EQ(base.result.to_string(), "{(h_0,0),(w_0,1)}");
  EXPECT_EQ(base.sequent.sigma.to_string(), "{(h_0,0)}");

  std::vector<Mode> modes;
  for (const auto& n : t.nodes()) modes.push_back(n.sequent.mode);
  std::vector<Mode> want_modes = {Mode::L1, Mode::L1, Mode::L1, Mode::I1, Mode::I1,
                                  Mode::I0, Mode::I0, Mode::L0, Mode::L1, Mode::L1};
  EXPECT_EQ(modes, want_modes);
}

TEST(Golden, StepRunIsSuccessorTimesWitness) {
  ProofTree t = prove_text(fact_program(), kFactGoal);
  const ProofNode& step = t.at(6);
  const pind::Run& delta = step.result;
  ASSERT_EQ(delta.size(), 3u);
  Term j = *t.at(7).step_var;
  Term w0 = Term::indexed("w", 0);
  Term want = Term::mul(Term::succ(j), w0);
  EXPECT_EQ(*delta.find(Term::var("Y")), w0);
  const auto& loc = delta.bindings()[1];
  ASSERT_TRUE(std::holds_alternative<LocKey>(loc.key));
  const Term* w1 = delta.find(Term::indexed("w", 1));
  ASSERT_TRUE(w1);
  for (unsigned jv = 0; jv < 6; ++jv) {
    for (unsigned wv = 0; wv < 6; ++wv) {
      EXPECT_EQ(eval_with(*w1, j, jv, wv), eval_with(want, j, jv, wv));
      EXPECT_EQ(eval_with(loc.value, j, jv, wv), eval_with(want, j, jv, wv));
    }
  }
}

TEST(Prove, TrueIsSingleNode) {
  ProofTree t = prove_text(Program{}, "true");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_FALSE(t.root().failure);
  EXPECT_TRUE(t.root().result.empty());
  EXPECT_TRUE(t.root().child_distances.empty());
}

TEST(Prove, UndefinedPredicateFails) {
  EXPECT_THROW(prove_text(Program{}, "p(a)"), ProofFailure);
  EXPECT_THROW(prove_text(fact_program(), "p(a)"), ProofFailure);
}

TEST(Prove, FalseFails) { EXPECT_THROW(prove_text(Program{}, "false"), ProofFailure); }

TEST(Prove, BacktracksAcrossConjuncts) {
  Program p = parse_program("p(1) := true.\np(2) := true.\nq(2) := true.\n");
  ProofTree t = prove_text(p, "exists X. p(X) & q(X)");
  EXPECT_TRUE(t.validate().empty());
  EXPECT_EQ(t.root().result.to_string(), "{(y_0,2)}");
}

TEST(Prove, ExistentialWitnessFromUnification) {
  ProofTree t = prove_text(fact_program(), "exists Y. fact(3, Y)");
  EXPECT_EQ(t.root().result.to_string(), "{(y_0,6)}");
}

TEST(Prove, NatRight) {
  EXPECT_NO_THROW(prove_text(Program{}, "nat(3)"));
  EXPECT_NO_THROW(prove_text(Program{}, "nat(2+1)"));
  EXPECT_THROW(prove_text(Program{}, "nat(a)"), ProofFailure);
}

TEST(ProveLeft, FalsePremiseSucceeds) {
  ProofTree t = prove_text(Program{}, "false => p(a)");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at(0).rule, Rule::BotL);
}

TEST(ProveLeft, DefLHasOneChildPerUnifier) {
  Program p = parse_program("r(0, a) := true.\nr(X+1, b) := true.\n");
  ProofTree t = prove_text(p, "forall U. forall V. r(U, V) => true");
  EXPECT_TRUE(t.validate().empty());
  const ProofNode* defl = nullptr;
  for (const auto& n : t.nodes()) {
    if (n.rule == Rule::DefL) defl = &n;
  }
  ASSERT_TRUE(defl);
  EXPECT_EQ(defl->child_distances.size(), 2u);
  EXPECT_EQ(defl->thetas.size(), 2u);
}

TEST(ProveLeft, VacuousWhenNoClauseMatches) {
  ProofTree t = prove_text(fact_program(), "fact(0, 7) => false");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at(0).rule, Rule::DefL);
  EXPECT_TRUE(t.at(0).child_distances.empty());
}

TEST(Induction, PlusBaseBindsWitnessToTwo) {
  ProofTree t = prove_text(load_program("programs/plus.pig"), kPlusGoal);
  EXPECT_TRUE(t.validate().empty());
  const ProofNode* ind = nullptr;
  std::size_t at = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.at(i).rule == Rule::Induction) {
      ind = &t.at(i);
      at = i;
    }
  }
  ASSERT_TRUE(ind);
  const ProofNode& base = t.at(at - ind->child_distances[0]);
  EXPECT_EQ(*base.result.find(Term::indexed("w", 0)), Term::nat(2));
}

TEST(Induction, ConjunctiveGoalUsesDistinctLocations) {
  Program p = parse_program("d(0, 0) := true.\nd(X+1, Y+1+1) := d(X, Y).\n");
  ProofTree t = prove_text(p, "forall N. nat(N) => exists A. exists B. d(N, A) & d(N, B)");
  EXPECT_TRUE(t.validate().empty());
  const ProofNode* step = nullptr;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.at(i).rule == Rule::Induction) step = &t.at(i - t.at(i).child_distances[1]);
  }
  ASSERT_TRUE(step);
  std::set<LocKey> locs;
  for (const auto& b : step->result) {
    if (auto* l = std::get_if<LocKey>(&b.key)) locs.insert(*l);
  }
  EXPECT_EQ(locs.size(), 2u);
}

TEST(Induction, RejectsNatInsideGoal) {
  EXPECT_THROW(prove_text(Program{}, "forall N. nat(N) => nat(N)"), ProofFailure);
}

TEST(Induction, StepHypothesisMatch) {
  Program p = parse_program("e(0) := true.\ne(X+1) := e(X).\n");
  ProofTree t = prove_text(p, "forall N. nat(N) => e(N)");
  EXPECT_TRUE(t.validate().empty());
  bool hyp = false;
  for (const auto& n : t.nodes()) hyp = hyp || n.rule == Rule::StepHypothesis;
  EXPECT_TRUE(hyp);
}

TEST(Induction, NoHypothesisMatchFails) {
  Program p = parse_program("e(0) := true.\ne(X+1+1) := e(X).\n");
  EXPECT_THROW(prove_text(p, "forall N. nat(N) => e(N)"), ProofFailure);
}

TEST(Enumerate, FactAgainstOpenAtom) {
  FreshNames fresh;
  Term atom = Term::compound("fact", {Term::var("U"), Term::var("V")});
  auto defs = enumerate_definitions(atom, pind::Run{}, fact_program(), fresh);
  ASSERT_EQ(defs.size(), 2u);
  for (const auto& d : defs) {
    EXPECT_FALSE(d.theta.empty());
  }
  EXPECT_EQ(defs[1].body.kind(), FormulaKind::Atom);
}

TEST(Enumerate, ExactHeadMatch) {
  FreshNames fresh;
  Term atom = Term::compound("fact", {Term::nat(0), Term::nat(1)});
  auto defs = enumerate_definitions(atom, pind::Run{}, fact_program(), fresh);
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_TRUE(defs[0].theta.empty());
  EXPECT_EQ(defs[0].body.kind(), FormulaKind::Top);
}

TEST(Enumerate, NatIsBuiltIn) {
  FreshNames fresh;
  auto defs = enumerate_definitions(Term::compound("nat", {Term::var("U")}), pind::Run{},
                                    fact_program(), fresh);
  EXPECT_TRUE(defs.empty());
}

TEST(Budget, LoopingSearchHitsLimit) {
  Program p = parse_program("loop(X) := loop(f(X)).\n");
  EXPECT_THROW(prove_text(p, "loop(a)", 500), SearchLimitExceeded);
}

TEST(Budget, DeepRecursionRunsOnLargeStack) {
  Program p = parse_program("count(0) := true.\ncount(X+1) := count(X).\n");
  EXPECT_NO_THROW(prove_text(p, "count(20000)", 1000000));
}

TEST(WellFormed, GeneratedCorpus) {
  std::size_t proved = 0;
  for (const auto& c : program_corpus(300)) {
    Program p = parse_program(c.program);
    try {
      ProofTree t = prove_text(p, c.goal, 2000);
      auto problems = t.validate();
      EXPECT_TRUE(problems.empty()) << c.program << c.goal << "\n" << problems.front();
      ++proved;
    } catch (const ProofFailure&) {
    } catch (const SearchLimitExceeded&) {
    }
  }
  EXPECT_GE(proved, 20u);
}

TEST(Validate, DetectsBrokenTrees) {
  ProofTree good = prove_text(fact_program(), kFactGoal);
  std::vector<ProofNode> nodes = good.nodes();
  nodes[7].child_distances = {5, 5};
  EXPECT_FALSE(ProofTree(nodes).validate().empty());
  nodes = good.nodes();
  nodes[9].child_distances = {10};
  EXPECT_FALSE(ProofTree(nodes).validate().empty());
  nodes = good.nodes();
  nodes[4].sequent.mode = Mode::L0;
  EXPECT_FALSE(ProofTree(nodes).validate().empty());
}

TEST(Determinism, SameProofTwice) {
  EXPECT_EQ(prove_text(fact_program(), kFactGoal).dump(),
            prove_text(fact_program(), kFactGoal).dump());
}
