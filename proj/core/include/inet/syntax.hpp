#pragma once

// Textual net language:
//
//   program   := sig? rule* net
//   sig       := "agent" decl ("," decl)*          decl := AGENT ":" NAT
//   rule      := "rule" lhs "><" lhs "=>" eqs? ";"  lhs  := AGENT [ "(" name ("," name)* ")" ]
//   net       := "net" "<" terms? ">" ":" eqs? ";"
//   eqs       := eq ("," eq)*                      eq   := term "=" term
//   term      := name | AGENT [ "(" terms ")" ]     terms:= term ("," term)*
//
// Agents start uppercase, names lowercase; '#' comments run to end of line.

#include <string>
#include <string_view>
#include <vector>

#include "inet/term.hpp"

namespace inet {

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct SourceRule {
  Rule rule;
  SourcePos pos;
};

struct SourceNet {
  std::vector<Term> interface;
  std::vector<Equation> equations;
  SourcePos pos;
};

struct SourceProgram {
  Signature signature;
  std::vector<SourceRule> rules;
  SourceNet net;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

// Throws Error with kind syntax / unknown_symbol / arity_mismatch /
// linearity (a net name used more than twice), carrying line and column.
SourceProgram parse_source(std::string_view text);

// Empty iff the rules are linear, parameters line up, and no unordered pair
// has more than one rule. The net itself is re-checked for linearity.
std::vector<Diagnostic> validate(const SourceProgram& program);

std::string format_diagnostic(const Diagnostic& d);

// Validates, then returns the rule table closed under symmetry. Throws
// Error(invalid_program) with the first diagnostic on failure.
RuleSet build_rule_set(const SourceProgram& program);

// Standalone term / equation-list parsers against an existing signature.
Term parse_term(std::string_view text, const Signature& sig);
std::vector<Equation> parse_equations(std::string_view text,
                                      const Signature& sig);

std::string pretty_rule(const Rule& rule, const Signature& sig);
std::string pretty_program(const SourceProgram& program);

}  // namespace inet
