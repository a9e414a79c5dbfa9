#include <gtest/gtest.h>

#include "forlog/unify.hpp"

using namespace forlog;

namespace {

struct Store {
  Bindings b;
  Trail t;
};

Term f(std::vector<Term> args) { return Term::compound("f", std::move(args)); }

}  // namespace

TEST(Deref, FollowsChains) {
  Store s;
  Term x = Term::fresh_var("X"), y = Term::fresh_var("Y"), z = Term::fresh_var("Z");
  s.t.bind(s.b, x.as<Var>().id, y);
  s.t.bind(s.b, y.as<Var>().id, z);
  EXPECT_EQ(deref(x, s.b), z);
  s.t.bind(s.b, z.as<Var>().id, Term::atom("a"));
  EXPECT_EQ(deref(x, s.b), Term::atom("a"));
  EXPECT_EQ(deref(Term::atom("b"), s.b), Term::atom("b"));
}

TEST(Resolve, AppliesBindingsEverywhere) {
  Store s;
  Term x = Term::fresh_var("X"), y = Term::fresh_var("Y");
  s.t.bind(s.b, x.as<Var>().id, Term::list({y, Term::integer(2)}));
  s.t.bind(s.b, y.as<Var>().id, Term::integer(1));
  EXPECT_EQ(resolve(f({x}), s.b), f({Term::list({Term::integer(1), Term::integer(2)})}));
}

TEST(Resolve, LongListsDoNotOverflow) {
  std::vector<Term> items(200000, Term::atom("a"));
  Store s;
  EXPECT_EQ(resolve(Term::list(items), s.b), Term::list(items));
}

TEST(Resolve, CyclicBindingIsAnError) {
  Store s;
  Term x = Term::fresh_var("X");
  ASSERT_TRUE(unify(x, f({x}), s.b, s.t, false));
  EXPECT_THROW(resolve(x, s.b), RuntimeError);
}

TEST(Unify, BindsAndAgrees) {
  Store s;
  Term x = Term::fresh_var("X"), y = Term::fresh_var("Y");
  ASSERT_TRUE(unify(f({x, Term::atom("b")}), f({Term::atom("a"), y}), s.b, s.t, true));
  EXPECT_EQ(resolve(x, s.b), Term::atom("a"));
  EXPECT_EQ(resolve(y, s.b), Term::atom("b"));
}

TEST(Unify, DistinguishesAtomsStringsAndIntegers) {
  Store s;
  EXPECT_FALSE(unify(Term::atom("1"), Term::integer(1), s.b, s.t, true));
  EXPECT_FALSE(unify(Term::atom("a"), Term::string("a"), s.b, s.t, true));
  EXPECT_TRUE(unify(Term::integer(Integer("99999999999999999999")), Term::integer(Integer("99999999999999999999")), s.b,
                    s.t, true));
  EXPECT_FALSE(unify(f({Term::atom("a")}), Term::compound("f", {Term::atom("a"), Term::atom("a")}), s.b, s.t, true));
}

TEST(Unify, OccursCheckIsOptional) {
  Term x = Term::fresh_var("X");
  Store on, off;
  EXPECT_FALSE(unify(x, f({x}), on.b, on.t, true));
  EXPECT_EQ(on.b.size(), 0u);
  EXPECT_TRUE(unify(x, f({x}), off.b, off.t, false));
}

TEST(Unify, FailureRestoresState) {
  Store s;
  Term x = Term::fresh_var("X"), y = Term::fresh_var("Y");
  s.t.bind(s.b, y.as<Var>().id, Term::atom("c"));
  EXPECT_FALSE(unify(f({x, Term::atom("a")}), f({Term::atom("b"), y}), s.b, s.t, true));
  EXPECT_EQ(s.b.size(), 1u);
  EXPECT_EQ(s.t.size(), 1u);
  EXPECT_FALSE(s.b.bound(x.as<Var>().id));
}

TEST(Unify, VariablePairBindsYoungerToOlder) {
  Store s;
  Term old = Term::fresh_var("Old"), young = Term::fresh_var("Young");
  ASSERT_TRUE(unify(old, young, s.b, s.t, true));
  EXPECT_TRUE(s.b.bound(young.as<Var>().id));
  EXPECT_FALSE(s.b.bound(old.as<Var>().id));
}

TEST(Unify, DeepTermsAreIterative) {
  Term a = Term::atom("z"), b = Term::fresh_var("V");
  Term tail = b;
  for (int i = 0; i < 100000; ++i) {
    a = f({a});
    tail = f({tail});
  }
  Store s;
  EXPECT_TRUE(unify(a, tail, s.b, s.t, true));
  EXPECT_EQ(resolve(b, s.b), Term::atom("z"));
}

TEST(Trail, UndoIsLastInFirstOut) {
  Store s;
  Term x = Term::fresh_var("X"), y = Term::fresh_var("Y"), z = Term::fresh_var("Z");
  s.t.bind(s.b, x.as<Var>().id, Term::atom("a"));
  TrailMark m1 = s.t.checkpoint();
  s.t.bind(s.b, y.as<Var>().id, Term::atom("b"));
  TrailMark m2 = s.t.checkpoint();
  s.t.bind(s.b, z.as<Var>().id, Term::atom("c"));
  s.t.undo(s.b, m2);
  EXPECT_TRUE(s.b.bound(y.as<Var>().id));
  EXPECT_FALSE(s.b.bound(z.as<Var>().id));
  s.t.undo(s.b, m1);
  EXPECT_EQ(s.b.size(), 1u);
  EXPECT_EQ(s.t.size(), 1u);
}

TEST(Trail, StaleMarkIsRejected) {
  Store s;
  Term x = Term::fresh_var("X"), y = Term::fresh_var("Y");
  TrailMark m0 = s.t.checkpoint();
  s.t.bind(s.b, x.as<Var>().id, Term::atom("a"));
  TrailMark m1 = s.t.checkpoint();
  s.t.undo(s.b, m0);
  EXPECT_THROW(s.t.undo(s.b, m1), std::logic_error);
  // Same size again, but a different history.
  s.t.bind(s.b, y.as<Var>().id, Term::atom("b"));
  EXPECT_THROW(s.t.undo(s.b, m1), std::logic_error);
  EXPECT_NO_THROW(s.t.undo(s.b, m0));
}
