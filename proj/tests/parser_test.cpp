#include <gtest/gtest.h>

#include "pind/levels.hpp"
#include "pind/parser.hpp"
#include "support.hpp"

using namespace pind;
using namespace pind::support;

TEST(ParseProgram, Factorial) {
  Program p = load_program("programs/fact.pig");
  ASSERT_EQ(p.clauses.size(), 2u);
  EXPECT_EQ(p.clauses[0].head.to_string(), "fact(0,1)");
  EXPECT_EQ(p.clauses[0].body.kind(), FormulaKind::Top);
  EXPECT_EQ(p.clauses[1].body.to_string(), "fact(X,Y)");
  auto rep = check_levels(p, parse_goal(kFactGoal));
  EXPECT_EQ(rep.levels.at("fact"), 0);
}

TEST(ParseProgram, Empty) {
  EXPECT_TRUE(parse_program("").clauses.empty());
  EXPECT_TRUE(parse_program("% only a comment\n").clauses.empty());
}

TEST(ParseProgram, MissingBody) {
  try {
    parse_program("fact(0,1) :=");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_FALSE(e.expected().empty());
    EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos);
  }
}

TEST(ParseProgram, ErrorPosition) {
  try {
    parse_program("p(a) := true.\nq(b) := & .\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
}

TEST(ParseProgram, ReservedHeads) {
  EXPECT_THROW(parse_program("nat(X) := true."), ParseError);
}

TEST(ParseGoal, FactorialGoalShape) {
  Formula g = parse_goal(kFactGoal);
  ASSERT_EQ(g.kind(), FormulaKind::Forall);
  const Formula& imp = g.body();
  ASSERT_EQ(imp.kind(), FormulaKind::NatImplies);
  EXPECT_EQ(imp.term(), g.binder().var);
  ASSERT_EQ(imp.body().kind(), FormulaKind::Exists);
  EXPECT_EQ(imp.body().body().kind(), FormulaKind::Atom);
  EXPECT_EQ(g.to_string(), kFactGoal);
}

TEST(ParseGoal, Top) { EXPECT_EQ(parse_goal("true").kind(), FormulaKind::Top); }

TEST(ParseGoal, ForallInAntecedentIsGrammarViolation) {
  EXPECT_THROW(parse_goal("(exists Y. forall X. p(X,Y)) => q"), GrammarViolation);
  EXPECT_THROW(parse_goal("(p => q) => r"), GrammarViolation);
}

TEST(ParseGoal, NatAntecedentNeverGenericImplication) {
  Formula g = parse_goal("forall X. nat(X) => p(X)");
  EXPECT_EQ(g.body().kind(), FormulaKind::NatImplies);
  // nat(x) => G requires G on the right.
  EXPECT_THROW(parse_goal("forall X. nat(X) => forall Y. p(Y)"), GrammarViolation);
}

TEST(ParseGoal, ArithmeticSyntax) {
  Formula g = parse_goal("p(X+1, X*Y+Y, X+1*2)");
  const Term& t = g.term();
  EXPECT_EQ(t.arg(0).kind(), TermKind::Succ);
  EXPECT_EQ(t.arg(1).kind(), TermKind::Add);
  EXPECT_EQ(t.arg(2).kind(), TermKind::Add);
}

TEST(ParseGoal, AlphaRenaming) {
  Formula g = parse_goal("p(X) & exists X. q(X)");
  std::string s = g.to_string();
  EXPECT_NE(s.find("exists X1. q(X1)"), std::string::npos) << s;
}

TEST(ParseGoal, AnonymousVariablesAreDistinct) {
  Formula g = parse_goal("p(_, _)");
  EXPECT_NE(g.term().arg(0), g.term().arg(1));
}

TEST(RoundTrip, ProgramsAndGoals) {
  Gen g(11);
  const std::vector<std::string> atoms = {"p(X)", "q(X, Y+1)", "r(0, X*Y+Y)", "nat(X)", "s(a, f(X))"};
  std::size_t checked = 0;
  for (int i = 0; i < 1000; ++i) {
    std::function<std::string(int, bool)> gform = [&](int d, bool g_only) -> std::string {
      if (d == 0) return atoms[g.below(atoms.size())];
      switch (g.below(g_only ? 4 : 6)) {
        case 0: return atoms[g.below(atoms.size())];
        case 1: return "(" + gform(d - 1, g_only) + " & " + gform(d - 1, g_only) + ")";
        case 2: return "exists Y. " + gform(d - 1, g_only);
        case 3: return g.coin() ? "true" : "false";
        case 4: return "forall X. " + gform(d - 1, false);
        default: return "((" + gform(d - 1, true) + " & p(a)) => " + gform(d - 1, false) + ")";
      }
    };
    std::string text = gform(3, false);
    Formula f = parse_goal(text);
    Formula again = parse_goal(f.to_string());
    EXPECT_EQ(again.to_string(), f.to_string()) << text;
    EXPECT_TRUE(again == f) << text;
    std::string prog = "h(X) := " + gform(2, true) + ".\n";
    Program p = parse_program(prog);
    Program p2 = parse_program(p.to_string());
    EXPECT_EQ(p2.to_string(), p.to_string());
    ++checked;
  }
  EXPECT_EQ(checked, 1000u);
}

TEST(Levels, ForallBodyLiftsHead) {
  Program p = parse_program("q(X) := forall Y. p(Y).\np(a) := true.\n");
  auto rep = check_levels(p, parse_goal("q(a)"));
  EXPECT_EQ(rep.levels.at("q"), 1);
  EXPECT_EQ(rep.levels.at("p"), 0);
}

TEST(Levels, DeclaredLevelZeroWithForallBodyFails) {
  Program p = parse_program("%level q 0\nq(X) := forall Y. p(Y).\n");
  EXPECT_THROW(check_levels(p, parse_goal("true")), LevelError);
}

TEST(Levels, EmptyProgramTrueGoal) {
  EXPECT_NO_THROW(check_levels(Program{}, parse_goal("true")));
}

TEST(Levels, LevelOneAtomInGoalAntecedent) {
  Program p = parse_program("q(X) := forall Y. p(Y).\n");
  EXPECT_THROW(check_levels(p, parse_goal("q(a) => true")), LevelError);
}
