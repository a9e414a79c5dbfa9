#include <gtest/gtest.h>

#include "forlog/ast.hpp"
#include "forlog/print.hpp"
#include "forlog/reader.hpp"
#include "generators.hpp"

using namespace forlog;

namespace {

Var var(const char* name) { return Var{name, fresh_var_id()}; }

std::vector<std::string> names(const VarList& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.name);
  return out;
}

}  // namespace

TEST(Term, ListsAreConsCells) {
  Term l = Term::list({Term::integer(1), Term::integer(2)});
  ASSERT_TRUE(l.is_cons());
  EXPECT_EQ(l.functor(), ".");
  EXPECT_EQ(l.arity(), 2u);
  EXPECT_EQ(l.as<Compound>().args[1].as<Compound>().args[1], Term::nil());
  EXPECT_TRUE(Term().is_nil());
}

TEST(Term, StructuralEqualityComparesVariableIdentity) {
  Var x = var("X");
  EXPECT_EQ(Term::compound("f", {Term(x)}), Term::compound("f", {Term(x)}));
  EXPECT_NE(Term::compound("f", {Term(x)}), Term::compound("f", {Term(var("X"))}));
  EXPECT_NE(Term::atom("a"), Term::string("a"));
  EXPECT_EQ(Term::integer(Integer("123456789012345678901234567890")),
            Term::integer(Integer("123456789012345678901234567890")));
}

TEST(Term, CompoundNeedsArguments) { EXPECT_THROW(Term::compound("f", {}), std::invalid_argument); }

TEST(Goal, CallNeedsCallable) {
  EXPECT_THROW(Goal::call(Term::integer(1)), std::invalid_argument);
  EXPECT_THROW(Goal::call(Term(var("X"))), std::invalid_argument);
  EXPECT_NO_THROW(Goal::call(Term::atom("p")));
}

TEST(Program, IndexesBySignatureInSourceOrder) {
  SourceUnit u = parse_program("p(a). q. p(b). p(c, d). p(e).");
  Program p(u.clauses);
  EXPECT_EQ(p.lookup({"p", 1}), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(p.lookup({"p", 2}), (std::vector<std::size_t>{3}));
  EXPECT_TRUE(p.lookup({"r", 0}).empty());
  EXPECT_TRUE(p.defines({"q", 0}));
  EXPECT_FALSE(p.defines({"q", 1}));
}

TEST(FreeVars, LoopVariableIsBoundOnlyInBody) {
  Var x = var("X"), l = var("L"), y = var("Y");
  // forall X in [X|L] do p(X, Y): the X in the list is free.
  Goal g = Goal::forall(x, Term::cons(Term(x), Term(l)), Goal::call(Term::compound("p", {Term(x), Term(y)})));
  EXPECT_EQ(names(free_vars(g)), (std::vector<std::string>{"X", "L", "Y"}));
  Goal h = Goal::forall(x, Term(l), Goal::call(Term::compound("p", {Term(x), Term(y)})));
  EXPECT_EQ(names(free_vars(h)), (std::vector<std::string>{"L", "Y"}));
}

TEST(FreeVars, ExistsBindsAndOrderIsFirstOccurrence) {
  Var a = var("A"), b = var("B"), c = var("C");
  Goal g = Goal::par_and(Goal::call(Term::compound("p", {Term(b)})),
                         Goal::exists(a, Goal::call(Term::compound("q", {Term(a), Term(c), Term(b)}))));
  EXPECT_EQ(names(free_vars(g)), (std::vector<std::string>{"B", "C"}));
}

TEST(Substitute, RespectsShadowingButNotTheList) {
  Var x = var("X");
  Term a = Term::atom("a");
  Goal inner = Goal::forall(x, Term::list({Term(x)}), Goal::call(Term::compound("p", {Term(x)})));
  Goal out = substitute(inner, x, a);
  const auto& f = out.as<ForallGoal>();
  EXPECT_EQ(f.list, Term::list({a}));
  EXPECT_EQ(*f.body, Goal::call(Term::compound("p", {Term(x)})));
  Goal ex = substitute(Goal::exists(x, Goal::call(Term::compound("p", {Term(x)}))), x, a);
  EXPECT_EQ(ex, Goal::exists(x, Goal::call(Term::compound("p", {Term(x)}))));
}

TEST(Substitute, ReplacesEveryFreeOccurrence) {
  Var x = var("X"), y = var("Y");
  Term t = Term::compound("f", {Term(x), Term::list({Term(y), Term(x)})});
  EXPECT_EQ(substitute(t, x, Term::integer(7)),
            Term::compound("f", {Term::integer(7), Term::list({Term(y), Term::integer(7)})}));
}

TEST(Rename, ProducesAVariantWithDisjointVariables) {
  SourceUnit u = parse_program("p(X, Y) :- forall Z in X do (q(Z, Y) & exists W do r(W, Z)).");
  const Clause& c = u.clauses.at(0);
  Clause r = rename_clause(c);
  EXPECT_TRUE(equal_up_to_renaming(c, r));
  EXPECT_FALSE(c == r);
  VarList before = vars_of(c.head), after = vars_of(r.head);
  for (const auto& v : before)
    for (const auto& w : after) EXPECT_NE(v.id, w.id);
}

TEST(Renaming, EqualityIsABijection) {
  Var x = var("X"), y = var("Y");
  EXPECT_TRUE(equal_up_to_renaming(Term::compound("f", {Term(x), Term(y)}), Term::compound("f", {Term(y), Term(x)})));
  EXPECT_FALSE(equal_up_to_renaming(Term::compound("f", {Term(x), Term(x)}), Term::compound("f", {Term(x), Term(y)})));
  EXPECT_FALSE(equal_up_to_renaming(Term::compound("f", {Term(x), Term(y)}), Term::compound("f", {Term(x), Term(x)})));
}

TEST(Renaming, RandomGoalsSurviveRenaming) {
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    forlog::testing::Generator gen(seed);
    gen.facts();
    std::vector<Var> scope;
    Goal g = gen.goal(scope, forlog::testing::GoalShape{4, 2, false});
    Goal r = rename_goal(g);
    EXPECT_TRUE(equal_up_to_renaming(g, r)) << to_string(g);
    EXPECT_EQ(free_vars(g).size(), free_vars(r).size());
  }
}
