#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "sctcheck/deppairs.hpp"
#include "sctcheck/typecheck.hpp"
#include "support.hpp"

namespace sctcheck {
namespace {

std::string type_of(const RuleEnvironment& env, const std::string& name, const InfixTable* infix = nullptr) {
  const Term* t = env.delta.find(name);
  return t ? print_term(*t, infix) : "<none>";
}

bool has_rule(const std::vector<std::string>& trace, const std::string& prefix) {
  return std::any_of(trace.begin(), trace.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

class ExampleOne : public ::testing::Test {
 protected:
  void SetUp() override {
    sys = testing::load_system("example1.sct");
    dps = extract_dependency_pairs(sys.rules, sys.signature);
  }
  RuleEnvironment env(std::size_t i) { return infer_rule_environment(sys.rules[i], sys.signature, sys.rules); }
  System sys;
  std::vector<DependencyPair> dps;
};

TEST_F(ExampleOne, EnvironmentOfRuleF) {
  // len_fil a f _ (cons _ x p l) --> len_fil_aux (f x) a f p l
  RuleEnvironment e = env(6);
  const InfixTable* infix = &sys.signature.infix;
  EXPECT_EQ(type_of(e, "a", infix), "Set");
  EXPECT_EQ(type_of(e, "f", infix), "El a -> Bool");
  EXPECT_EQ(type_of(e, "x", infix), "El a");
  EXPECT_EQ(type_of(e, "p", infix), "Nat");
  EXPECT_EQ(type_of(e, "l", infix), "List a p");
  // Both wildcards are present; the one under cons is solved to a.
  EXPECT_EQ(e.delta.size(), 7u);
  ASSERT_EQ(e.unifier.size(), 2u);
  bool solved_to_a = false;
  for (const auto& [v, t] : e.unifier) solved_to_a |= alpha_equal(t, Term::var("a"));
  EXPECT_TRUE(solved_to_a);
}

TEST_F(ExampleOne, EnvironmentOfAppend) {
  // app a _ (cons _ x p l) q m: the length wildcard becomes s p.
  RuleEnvironment e = env(4);
  const InfixTable* infix = &sys.signature.infix;
  EXPECT_EQ(type_of(e, "m", infix), "List a q");
  EXPECT_EQ(type_of(e, "l", infix), "List a p");
  bool succ = false;
  for (const auto& [v, t] : e.unifier) succ |= print_term(t) == "s p";
  EXPECT_TRUE(succ);
}

TEST_F(ExampleOne, AllRulesArePfp) {
  for (const auto& r : sys.rules) {
    RuleEnvironment e = infer_rule_environment(r, sys.signature, sys.rules);
    PfpResult p = check_pfp(r, e, sys.signature, sys.rules);
    EXPECT_TRUE(p.pass) << r.index << ": " << p.reason;
  }
}

TEST_F(ExampleOne, AllRulesSatisfyConditionD) {
  for (const auto& r : sys.rules) {
    RuleEnvironment e = infer_rule_environment(r, sys.signature, sys.rules);
    ConditionDResult d = check_condition_d(r, e, sys, dps, 10000);
    EXPECT_EQ(d.outcome, Outcome::Pass) << r.index << ": " << d.reason;
  }
}

TEST_F(ExampleOne, RuleFUsesItsDependencyPair) {
  RuleEnvironment e = env(6);
  ConditionDResult d = check_condition_d(sys.rules[6], e, sys, dps, 10000);
  EXPECT_EQ(d.outcome, Outcome::Pass);
  EXPECT_TRUE(has_rule(d.trace, "dp:F"));
  EXPECT_FALSE(has_rule(d.trace, "dp:G"));
}

TEST_F(ExampleOne, ConversionNeedsFuel) {
  // app a _ (nil _) q m --> m needs List a q ~ List a (zero + q).
  RuleEnvironment e = env(3);
  ConditionDResult d = check_condition_d(sys.rules[3], e, sys, dps, 10000);
  EXPECT_EQ(d.outcome, Outcome::Pass);
  EXPECT_TRUE(has_rule(d.trace, "conv'"));
  ConditionDResult starved = check_condition_d(sys.rules[3], e, sys, dps, 0);
  EXPECT_EQ(starved.outcome, Outcome::Unknown);
}

TEST_F(ExampleOne, MissingPairIsInadmissible) {
  RuleEnvironment e = env(6);
  ConditionDResult d = check_condition_d(sys.rules[6], e, sys, {}, 10000);
  EXPECT_EQ(d.outcome, Outcome::Fail);
  EXPECT_NE(d.reason.find("inadmissible"), std::string::npos);
}

TEST_F(ExampleOne, EnvironmentReproducesTelescopeTypes) {
  for (const auto& r : sys.rules) {
    RuleEnvironment e = infer_rule_environment(r, sys.signature, sys.rules);
    Term cur = sys.signature.at(r.head).theta;
    for (const auto& l : r.args) {
      ASSERT_TRUE(cur.is_prod());
      if (l.is_var()) {
        Term expected = substitute(cur.domain(), e.unifier);
        ASSERT_NE(e.delta.find(l.name()), nullptr);
        EXPECT_TRUE(alpha_equal(*e.delta.find(l.name()), expected)) << r.index << " " << l.name();
      }
      cur = substitute(cur.codomain(), {{cur.binder(), l}});
    }
  }
}

TEST_F(ExampleOne, ChecksArePure) {
  std::vector<std::string> before;
  for (const auto& r : sys.rules) before.push_back(alpha_key(r.lhs) + " " + alpha_key(r.rhs));
  for (const auto& r : sys.rules) {
    RuleEnvironment e = infer_rule_environment(r, sys.signature, sys.rules);
    check_pfp(r, e, sys.signature, sys.rules);
    check_condition_d(r, e, sys, dps, 10000);
  }
  for (std::size_t i = 0; i < sys.rules.size(); ++i)
    EXPECT_EQ(alpha_key(sys.rules[i].lhs) + " " + alpha_key(sys.rules[i].rhs), before[i]);
}

TEST(Environment, PlusZero) {
  System sys = testing::load_system("plus.sct");
  RuleEnvironment e = infer_rule_environment(sys.rules[0], sys.signature, sys.rules);
  ASSERT_EQ(e.delta.size(), 1u);
  EXPECT_EQ(e.delta.entries()[0].name, "q");
  EXPECT_EQ(print_term(e.delta.entries()[0].type), "Nat");
  ConditionDResult d = check_condition_d(sys.rules[0], e, sys, {}, 100);
  EXPECT_EQ(d.outcome, Outcome::Pass);
  EXPECT_EQ(d.trace.back(), "var");
}

EnvironmentErrorKind env_error(const std::string& text) {
  System sys = build_system_from_text(text);
  try {
    infer_rule_environment(sys.rules[sys.rules.size() - 1], sys.signature, sys.rules);
  } catch (const EnvironmentError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no environment error";
  return EnvironmentErrorKind::NotInferable;
}

TEST(Environment, Errors) {
  const std::string base = "symbol N: TYPE. symbol B: TYPE. symbol t: B. symbol z: N. symbol plus: N -> N -> N.\n";
  EXPECT_EQ(env_error(base + "symbol h: (N -> N) -> N. rule h (\\x:N, x) --> z."),
            EnvironmentErrorKind::NonAlgebraic);
  EXPECT_EQ(env_error(base + "symbol k: N -> B -> N. rule k x x --> z."), EnvironmentErrorKind::ConflictingTypes);
  EXPECT_EQ(env_error(base + "rule plus x y w --> x."), EnvironmentErrorKind::ArityOverflow);
  EXPECT_EQ(env_error(base + "rule plus t y --> y."), EnvironmentErrorKind::NotInferable);
  EXPECT_EQ(env_error(base + "symbol g: (N -> N) -> N. rule g (plus (f z)) --> z."),
            EnvironmentErrorKind::NonAlgebraic);
}

TEST(Pfp, OrdinalRecursorFailsOnF) {
  System sys = testing::load_system("ordrec.sct");
  for (std::size_t i = 0; i < 2; ++i) {
    RuleEnvironment e = infer_rule_environment(sys.rules[i], sys.signature, sys.rules);
    EXPECT_TRUE(check_pfp(sys.rules[i], e, sys.signature, sys.rules).pass);
  }
  RuleEnvironment e = infer_rule_environment(sys.rules[2], sys.signature, sys.rules);
  EXPECT_EQ(print_term(*e.delta.find("f")), "Nat -> Ord");
  PfpResult p = check_pfp(sys.rules[2], e, sys.signature, sys.rules);
  EXPECT_FALSE(p.pass);
  EXPECT_EQ(p.variable, "f");
}

TEST(Pfp, LambdaEncodingFails) {
  System sys = testing::load_system("stlc.sct");
  RuleEnvironment e = infer_rule_environment(sys.rules[0], sys.signature, sys.rules);
  PfpResult p = check_pfp(sys.rules[0], e, sys.signature, sys.rules);
  EXPECT_FALSE(p.pass);
  EXPECT_EQ(p.variable, "f");
}

TEST(ConditionD, OrdinalRecursorUnderBinder) {
  System sys = testing::load_system("ordrec.sct");
  auto dps = extract_dependency_pairs(sys.rules, sys.signature);
  RuleEnvironment e = infer_rule_environment(sys.rules[2], sys.signature, sys.rules);
  ConditionDResult d = check_condition_d(sys.rules[2], e, sys, dps, 1000);
  EXPECT_EQ(d.outcome, Outcome::Pass) << d.reason;
  EXPECT_TRUE(has_rule(d.trace, "abs"));
  EXPECT_TRUE(has_rule(d.trace, "dp:B"));
}

TEST(ConditionD, IllTypedRhsFails) {
  System sys = build_system_from_text(
      "symbol N: TYPE. symbol B: TYPE. symbol t: B. symbol z: N. symbol f: N -> N. rule f x --> t.");
  RuleEnvironment e = infer_rule_environment(sys.rules[0], sys.signature, sys.rules);
  ConditionDResult d = check_condition_d(sys.rules[0], e, sys, {}, 100);
  EXPECT_EQ(d.outcome, Outcome::Fail);
  EXPECT_NE(d.reason.find("mismatch"), std::string::npos);
}

TEST(ConditionD, OutcomeStrings) {
  EXPECT_STREQ(to_string(Outcome::Pass), "pass");
  EXPECT_STREQ(to_string(Outcome::Unknown), "unknown");
}

// Constructor-only right-hand sides never need (dp).
TEST(TypecheckProperty, ConstructorRhsNeverUsesDp) {
  System sys = build_system_from_text(
      "symbol N: TYPE. symbol z: N. symbol s: N -> N. symbol c: N -> N -> N.\n"
      "symbol plus: N -> N -> N.\nrule plus x y --> x.");
  std::mt19937 rng(3);
  std::function<Term(int)> gen = [&](int depth) -> Term {
    switch (depth <= 0 ? rng() % 3 : rng() % 5) {
      case 0: return Term::sym("z");
      case 1: return Term::var("x");
      case 2: return Term::var("y");
      case 3: return Term::app(Term::sym("s"), gen(depth - 1));
      default: return Term::app(Term::app(Term::sym("c"), gen(depth - 1)), gen(depth - 1));
    }
  };
  const Rule& template_rule = sys.rules[0];
  for (int i = 0; i < 1000; ++i) {
    Rule r(template_rule.lhs, gen(4), 0);
    RuleEnvironment e = infer_rule_environment(r, sys.signature, sys.rules);
    ConditionDResult d = check_condition_d(r, e, sys, {}, 100);
    ASSERT_EQ(d.outcome, Outcome::Pass) << print_term(r.rhs) << ": " << d.reason;
    ASSERT_FALSE(has_rule(d.trace, "dp:"));
  }
}

TEST(TypecheckProperty, StarvedFuelNeverContradicts) {
  for (const char* name : {"example1.sct", "list_length.sct", "ordrec.sct", "division.sct", "stlc.sct"}) {
    System sys = testing::load_system(name);
    auto dps = extract_dependency_pairs(sys.rules, sys.signature);
    for (const auto& r : sys.rules) {
      RuleEnvironment e = infer_rule_environment(r, sys.signature, sys.rules);
      Outcome full = check_condition_d(r, e, sys, dps, 10000).outcome;
      Outcome starved = check_condition_d(r, e, sys, dps, 0).outcome;
      EXPECT_TRUE(starved == full || starved == Outcome::Unknown) << name << " rule " << r.index;
    }
  }
}

}  // namespace
}  // namespace sctcheck
