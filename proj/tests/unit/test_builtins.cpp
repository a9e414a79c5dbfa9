#include <gtest/gtest.h>
#include <gmpxx.h>

#include <optional>
#include <random>

#include "forlog/builtins.hpp"
#include "forlog/engine.hpp"
#include "forlog/print.hpp"
#include "forlog/reader.hpp"
#include "helpers.hpp"

using namespace forlog;
using forlog::testing::program_of;

namespace {

QueryResult run(const std::string& query, const std::string& input = {}) {
  RunOptions opts;
  opts.input = input;
  return run_query(program_of("p(a)."), parse_goal(query), opts);
}

std::string value_of(const QueryResult& r, const char* name) {
  if (r.solutions.empty()) return "<no solution>";
  const AnswerBinding* b = r.solutions[0].find(name);
  return b ? b->text : "<unbound>";
}

// Random expression rendered fully parenthesised, with its GMP value
// (nullopt after a division by zero).
struct Expr {
  std::string text;
  std::optional<mpz_class> value;
};

class ExprGen {
 public:
  explicit ExprGen(std::uint32_t seed) : rng_(seed) {}

  Expr make(int depth) {
    int kind = depth == 0 ? 0 : pick(0, 6);
    if (kind == 0) {
      mpz_class v = literal();
      std::string s = v.get_str();
      return {v < 0 ? "(" + s + ")" : s, v};
    }
    if (kind == 1) {
      Expr e = make(depth - 1);
      if (e.value) e.value = -*e.value;
      return {"(-" + e.text + ")", e.value};
    }
    static const char* ops[] = {"+", "-", "*", "//", "mod"};
    const char* op = ops[kind - 2];
    Expr l = make(depth - 1), r = make(depth - 1);
    Expr out{"(" + l.text + " " + op + " " + r.text + ")", std::nullopt};
    if (!l.value || !r.value) return out;
    const mpz_class &a = *l.value, &b = *r.value;
    mpz_class v;
    switch (kind) {
      case 2: v = a + b; break;
      case 3: v = a - b; break;
      case 4: v = a * b; break;
      case 5:
        if (b == 0) return out;
        mpz_fdiv_q(v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        break;
      default:
        if (b == 0) return out;
        mpz_fdiv_r(v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    out.value = v;
    return out;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  mpz_class literal() {
    switch (pick(0, 3)) {
      case 0: return pick(-3, 3);
      case 1: return pick(-1000, 1000);
      case 2: {
        mpz_class v(std::to_string(std::uniform_int_distribution<long long>(0, 4000000000000000000LL)(rng_)));
        return pick(0, 1) ? mpz_class(-v) : v;
      }
      default: {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 10, static_cast<unsigned long>(pick(19, 40)));
        return v + pick(-5, 5);
      }
    }
  }

  std::mt19937 rng_;
};

}  // namespace

TEST(Write, RendersTermsWithoutQuotes) {
  EXPECT_EQ(run("write(f(X, \"hi\", [1, 2 | T], 'a b'))").output, "f(_G0,hi,[1,2|_G1],a b)");
  EXPECT_EQ(run("write([])").output, "[]");
  EXPECT_EQ(run("write(-7)").output, "-7");
  EXPECT_EQ(run("write(1 + 2 * 3)").output, "1+2*3");
  EXPECT_EQ(run("write((1 + 2) * 3)").output, "(1+2)*3");
  EXPECT_EQ(run("write(7 mod 2)").output, "7 mod 2");
}

TEST(Write, NlAndSequencing) { EXPECT_EQ(run("write(a) & nl & write(b)").output, "a\nb"); }

TEST(Write, OutputRoundTripsThroughReader) {
  // Source-style rendering of a ground term parses back to the same term.
  for (const char* text : {"f(a, [1, 2, 3], g(\"s\"), -4)", "[a | b]", "h(1 - (2 - 3), 1 - 2 - 3)", "k(-(1), - 5)",
                           "m(2 * (3 + 4), 10 // 3 mod 2)"}) {
    std::size_t used = 0;
    Term t = *read_term(std::string(text) + ".", used);
    std::string printed = to_string(t);
    Term back = *read_term(printed + ".", used);
    EXPECT_EQ(t, back) << text << " printed as " << printed;
  }
}

TEST(Read, ConsumesTermsInOrder) {
  QueryResult r = run("read(X) & read(Y)", "foo(1).\n[a, b].\n");
  EXPECT_EQ(value_of(r, "X"), "foo(1)");
  EXPECT_EQ(value_of(r, "Y"), "[a, b]");
}

TEST(Read, UnifiesWithItsArgument) {
  EXPECT_EQ(run("read(5)", "5.").solutions.size(), 1u);
  EXPECT_TRUE(run("read(6)", "5.").solutions.empty());
}

TEST(Read, EndOfInputIsAnError) {
  QueryResult r = run("read(X)", "  % only a comment\n");
  ASSERT_TRUE(r.error.has_value());
  EXPECT_NE(r.error->find("end of input"), std::string::npos);
}

TEST(Read, MalformedInputIsAnError) { EXPECT_TRUE(run("read(X)", "foo(.").error.has_value()); }

TEST(Read, RefillPullsMoreLines) {
  std::vector<std::string> lines = {"bar(", "2)."};
  std::size_t next = 0;
  InputSource in("", [&]() -> std::optional<std::string> {
    if (next == lines.size()) return std::nullopt;
    return lines[next++] + "\n";
  });
  EXPECT_EQ(in.read(), Term::compound("bar", {Term::integer(2)}));
  EXPECT_THROW(in.read(), RuntimeError);
}

TEST(Is, MatchesGmpOnRandomExpressions) {
  ExprGen gen(20240611);
  int checked = 0, errors = 0;
  for (int i = 0; i < 1000; ++i) {
    Expr e = gen.make(1 + i % 4);
    QueryResult r = run("X is " + e.text);
    if (!e.value) {
      ++errors;
      EXPECT_TRUE(r.error.has_value()) << e.text;
      continue;
    }
    ++checked;
    ASSERT_FALSE(r.error.has_value()) << e.text << ": " << *r.error;
    EXPECT_EQ(value_of(r, "X"), e.value->get_str()) << e.text;
  }
  EXPECT_GT(checked, 900);
  EXPECT_GT(errors, 0);
}

TEST(Is, FloorDivisionIdentity) {
  for (int a = -20; a <= 20; ++a) {
    for (int b = -7; b <= 7; ++b) {
      if (b == 0) continue;
      Integer q = floor_div(a, b), r = floor_mod(a, b);
      EXPECT_EQ(q * b + r, Integer(a));
      EXPECT_TRUE(r == 0 || (r > 0) == (b > 0)) << a << " mod " << b;
      EXPECT_LT(abs(r), abs(Integer(b)));
    }
  }
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_mod(-7, 2), 1);
  EXPECT_EQ(floor_mod(7, -2), -1);
}

TEST(Is, ErrorsAreDistinctFromFailure) {
  EXPECT_TRUE(run("X is Y + 1").error.has_value());
  EXPECT_TRUE(run("X is foo + 1").error.has_value());
  EXPECT_TRUE(run("X is 1 // 0").error.has_value());
  EXPECT_TRUE(run("X is 1 mod 0").error.has_value());
  QueryResult r = run("3 is 1 + 1");
  EXPECT_FALSE(r.error.has_value());
  EXPECT_TRUE(r.solutions.empty());
}

TEST(Is, BigIntegers) {
  QueryResult r = run("X is 99999999999999999999 * 99999999999999999999");
  EXPECT_EQ(value_of(r, "X"), "9999999999999999999800000000000000000001");
}

TEST(Compare, EvaluatesBothSides) {
  EXPECT_EQ(run("1 + 2 < 4").solutions.size(), 1u);
  EXPECT_TRUE(run("4 < 1 + 2").solutions.empty());
  EXPECT_EQ(run("3 =< 3").solutions.size(), 1u);
  EXPECT_EQ(run("3 >= 3").solutions.size(), 1u);
  EXPECT_TRUE(run("3 > 3").solutions.empty());
  EXPECT_EQ(run("2 * 3 =:= 6").solutions.size(), 1u);
  EXPECT_EQ(run("2 * 3 =\\= 7").solutions.size(), 1u);
  EXPECT_TRUE(run("X < 3").error.has_value());
}

TEST(Unify, EqualsBuiltin) {
  QueryResult r = run("f(X, b) = f(a, Y)");
  EXPECT_EQ(value_of(r, "X"), "a");
  EXPECT_EQ(value_of(r, "Y"), "b");
  EXPECT_TRUE(run("a = b").solutions.empty());
  EXPECT_TRUE(run("1 + 1 = 2").solutions.empty());
}

TEST(Fail, AlwaysFails) {
  EXPECT_TRUE(run("fail").solutions.empty());
  EXPECT_EQ(run("true").solutions.size(), 1u);
}
