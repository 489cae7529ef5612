#include <gtest/gtest.h>

#include "inet/error.hpp"
#include "inet/families.hpp"
#include "inet/syntax.hpp"
#include "test_util.hpp"

namespace inet {
namespace {

using testing::kAddRulesOnly;

ErrorKind kind_of(const std::string& src) {
  try {
    parse_source(src);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::io;  // sentinel: no error
}

TEST(Syntax, ParsesAddExample) {
  const SourceProgram p = testing::load_net("add_example.inet");
  ASSERT_EQ(p.signature.size(), 3u);
  EXPECT_EQ(p.signature.name(0), "Z");
  EXPECT_EQ(p.signature.arity(2), 2);
  ASSERT_EQ(p.rules.size(), 2u);
  ASSERT_EQ(p.net.interface.size(), 1u);
  EXPECT_EQ(pretty_terms(p.net.interface, p.signature), "r");
  EXPECT_EQ(pretty_equations(p.net.equations, p.signature), "Add(Z,r)=S(Z)");
  EXPECT_TRUE(validate(p).empty());
}

TEST(Syntax, PrettyProgramRoundTrips) {
  const SourceProgram p = parse_source(family_source(Family::fib, {5}));
  EXPECT_EQ(pretty_program(parse_source(pretty_program(p))), pretty_program(p));
}

TEST(Syntax, ErrorsCarryPosition) {
  try {
    parse_source(std::string(kAddRulesOnly) + "net <r>: Add(Z, r) = Q;\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_symbol);
    EXPECT_EQ(e.line(), 4);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(Syntax, RejectsBadInput) {
  EXPECT_EQ(kind_of("agent Z:0\nnet <r>: Z(r) = r;"), ErrorKind::arity_mismatch);
  EXPECT_EQ(kind_of("agent Z:0\nnet <r>: Z = r, Z = r, Z = r;"), ErrorKind::linearity);
  EXPECT_EQ(kind_of("agent Z:0\nnet <r> Z = r;"), ErrorKind::syntax);
  EXPECT_EQ(kind_of("agent Z:0\nnet <r>: Z = r;"), ErrorKind::io);
}

TEST(Syntax, ValidateFlagsDuplicateRules) {
  const SourceProgram p = parse_source(std::string(kAddRulesOnly) +
                                       "rule Z >< Add(a, b) => a = b;\nnet <r>: Add(Z, r) = Z;\n");
  const auto d = validate(p);
  ASSERT_FALSE(d.empty());
  EXPECT_THROW(build_rule_set(p), Error);
}

TEST(Syntax, ValidateFlagsNonLinearRule) {
  const SourceProgram p = parse_source(
      "agent Z:0, S:1\nrule S(x) >< Z => x = y, y = Z, y = Z;\nnet <r>: S(r) = Z;\n");
  EXPECT_FALSE(validate(p).empty());
}

TEST(Syntax, EmptyNetIsAccepted) {
  const SourceProgram p = parse_source("agent Z:0\nnet <>: ;\n");
  EXPECT_TRUE(p.net.interface.empty());
  EXPECT_TRUE(p.net.equations.empty());
  EXPECT_TRUE(validate(p).empty());
}

TEST(Terms, CanonicalizeAndAlphaEquivalence) {
  Signature sig;
  sig.add("S", 1);
  sig.add("P", 2);
  const auto a = parse_term("P(x, S(y))", sig);
  const auto b = parse_term("P(u, S(v))", sig);
  const auto c = parse_term("P(u, S(u))", sig);
  EXPECT_TRUE(alpha_equivalent({a}, {b}));
  EXPECT_FALSE(alpha_equivalent({a}, {c}));
  EXPECT_EQ(canonicalize({a}), canonicalize({b}));
}

TEST(Terms, RemIndAndSubstitute) {
  Signature sig;
  const SymbolId s = sig.add("S", 1);
  const SymbolId z = sig.add("Z", 0);
  Term t = Term::make_ind(Term::make_agent(s, {Term::make_ind(Term::make_agent(z))}));
  EXPECT_TRUE(contains_ind(t));
  EXPECT_EQ(pretty_term(rem_ind(t), sig), "S(Z)");
  Term u = Term::make_agent(s, {Term::make_name("x")});
  EXPECT_EQ(pretty_term(substitute(u, Term::make_agent(z), "x"), sig), "S(Z)");
  EXPECT_EQ(pretty_term(substitute(u, Term::make_agent(z), "q"), sig), "S(x)");
}

TEST(Terms, FreshNamesCannotBeWritten) {
  FreshNameSource fresh;
  const std::string n = fresh.next();
  EXPECT_NE(n.find('#'), std::string::npos);
  EXPECT_EQ(kind_of("agent Z:0\nnet <" + n + ">: Z = " + n + ";"), ErrorKind::syntax);
}

TEST(Rules, SetIsClosedUnderSymmetry) {
  const SourceProgram p = testing::load_net("add_example.inet");
  const RuleSet rs = build_rule_set(p);
  const SymbolId z = *p.signature.find("Z");
  const SymbolId add = *p.signature.find("Add");
  ASSERT_NE(rs.find(add, z), nullptr);
  ASSERT_NE(rs.find(z, add), nullptr);
  EXPECT_EQ(*rs.find(z, add), mirrored(*rs.find(add, z)));
}

}  // namespace
}  // namespace inet
