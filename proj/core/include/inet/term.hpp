#pragma once

// Core value types shared by every engine: agent signatures, terms,
// equations, interaction rules and the two configuration shapes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace inet {

using SymbolId = std::uint32_t;

// Reserved print tokens for name and indirection nodes; never agent symbols.
inline constexpr std::string_view kNameToken = "N";
inline constexpr std::string_view kIndirectionToken = "$";

class Signature {
 public:
  struct Entry {
    std::string name;
    int arity = 0;
  };

  // Throws Error(invalid_program) on duplicates, reserved tokens or a
  // negative arity.
  SymbolId add(std::string name, int arity);

  std::optional<SymbolId> find(std::string_view name) const;
  const std::string& name(SymbolId id) const { return entries_[id].name; }
  int arity(SymbolId id) const { return entries_[id].arity; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  int max_arity() const;

  bool operator==(const Signature& other) const {
    return entries_.size() == other.entries_.size() &&
           std::equal(entries_.begin(), entries_.end(), other.entries_.begin(),
                      [](const Entry& a, const Entry& b) {
                        return a.name == b.name && a.arity == b.arity;
                      });
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, SymbolId> index_;
};

struct Term {
  enum class Kind : std::uint8_t { name, agent, ind };

  Kind kind = Kind::name;
  SymbolId symbol = 0;
  std::string name;
  // Agent children in port order, or the single target of an indirection.
  std::vector<Term> args;

  static Term make_name(std::string n);
  static Term make_agent(SymbolId s, std::vector<Term> children = {});
  static Term make_ind(Term target);

  bool is_name() const { return kind == Kind::name; }
  bool is_agent() const { return kind == Kind::agent; }
  bool is_ind() const { return kind == Kind::ind; }

  bool operator==(const Term& other) const = default;
};

struct Equation {
  Term left;
  Term right;

  bool operator==(const Equation& other) const = default;
};

struct Rule {
  SymbolId alpha = 0;
  SymbolId beta = 0;
  std::vector<std::string> params_left;
  std::vector<std::string> params_right;
  std::vector<Equation> rhs;

  bool operator==(const Rule& other) const = default;
};

// The same rule read from the other side of the active pair.
Rule mirrored(const Rule& rule);

// Dense (alpha, beta) -> rule table. add() inserts the mirrored variant as
// well, so lookups never depend on equation orientation.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::size_t symbol_count);

  // Returns false when a rule for the unordered pair already exists.
  bool add(const Rule& rule);
  const Rule* find(SymbolId alpha, SymbolId beta) const;
  std::size_t symbol_count() const { return symbol_count_; }
  // Every entry, including mirrored ones, in insertion order.
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::size_t symbol_count_ = 0;
  std::vector<std::int32_t> table_;
  std::vector<Rule> rules_;
};

struct LightConfig {
  std::vector<Term> head;
  std::vector<Equation> body;  // multiset; order is only a selection hint

  bool operator==(const LightConfig& other) const = default;
};

struct SimpleConfig {
  std::vector<Term> head;
  std::vector<Equation> body;  // back() is the stack top

  bool operator==(const SimpleConfig& other) const = default;
};

class FreshNameSource {
 public:
  FreshNameSource() = default;
  explicit FreshNameSource(std::uint64_t start) : counter_(start) {}

  // "w#<k>"; '#' starts a comment in source text, so users cannot write
  // these names.
  std::string next();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t counter_ = 0;
};

// --- structural helpers -----------------------------------------------------

std::set<std::string> names_of(const Term& t);
std::set<std::string> names_of(const Equation& e);
std::set<std::string> names_of(const std::vector<Term>& ts);
std::set<std::string> names_of(const std::vector<Equation>& es);

// Name occurrences in first-visit order, duplicates kept.
void collect_name_occurrences(const Term& t, std::vector<std::string>& out);

// t[u/x]: replaces the (single) free occurrence of x. No-op if x is absent.
Term substitute(Term t, const Term& u, std::string_view x);

// In-place variant used by the engines: on success moves `u` into the
// occurrence and returns true.
bool substitute_in_place(Term& t, std::string_view x, Term& u);

bool contains_name(const Term& t, std::string_view x);
bool contains_ind(const Term& t);
std::size_t term_size(const Term& t);

// Removes indirection wrappers.
Term rem_ind(Term t);

// A generic instance of the rule: bound names renamed fresh, parameters kept.
std::vector<Equation> instantiate_rule(const Rule& rule, FreshNameSource& fresh);

// Instance with the parameters already replaced by the active pair's
// children. `left_args`/`right_args` are consumed.
std::vector<Equation> instantiate_rule_with(const Rule& rule,
                                            std::vector<Term>& left_args,
                                            std::vector<Term>& right_args,
                                            FreshNameSource& fresh);

// Renames names by first occurrence (n1, n2, ...) across the sequence so
// that two results can be compared up to alpha-equivalence.
std::vector<Term> canonicalize(const std::vector<Term>& terms);
bool alpha_equivalent(const std::vector<Term>& a, const std::vector<Term>& b);

// Each name occurs at most twice across the given terms and equations.
bool is_linear(const std::vector<Term>& head, const std::vector<Equation>& body);

// --- printing ---------------------------------------------------------------

// Agents as Sym(a,b), names verbatim, indirections as <t>.
std::string pretty_term(const Term& t, const Signature& sig);
std::string pretty_equation(const Equation& e, const Signature& sig);
std::string pretty_terms(const std::vector<Term>& ts, const Signature& sig);
std::string pretty_equations(const std::vector<Equation>& es,
                             const Signature& sig);

}  // namespace inet
