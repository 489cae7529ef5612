#include "inet/term.hpp"

#include <unordered_map>
#include <utility>

#include "inet/error.hpp"

namespace inet {

SymbolId Signature::add(std::string name, int arity) {
  if (name == kNameToken || name == kIndirectionToken) {
    throw Error(ErrorKind::invalid_program,
                "symbol '" + name + "' is reserved for name/indirection nodes");
  }
  if (arity < 0) {
    throw Error(ErrorKind::invalid_program,
                "negative arity for symbol '" + name + "'");
  }
  if (index_.count(name) != 0) {
    throw Error(ErrorKind::invalid_program,
                "symbol '" + name + "' declared twice");
  }
  const auto id = static_cast<SymbolId>(entries_.size());
  index_.emplace(name, id);
  entries_.push_back({std::move(name), arity});
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.arity);
  return m;
}

Term Term::make_name(std::string n) {
  Term t;
  t.kind = Kind::name;
  t.name = std::move(n);
  return t;
}

Term Term::make_agent(SymbolId s, std::vector<Term> children) {
  Term t;
  t.kind = Kind::agent;
  t.symbol = s;
  t.args = std::move(children);
  return t;
}

Term Term::make_ind(Term target) {
  Term t;
  t.kind = Kind::ind;
  t.args.push_back(std::move(target));
  return t;
}

Rule mirrored(const Rule& rule) {
  Rule m;
  m.alpha = rule.beta;
  m.beta = rule.alpha;
  m.params_left = rule.params_right;
  m.params_right = rule.params_left;
  m.rhs = rule.rhs;
  return m;
}

RuleSet::RuleSet(std::size_t symbol_count)
    : symbol_count_(symbol_count), table_(symbol_count * symbol_count, -1) {}

bool RuleSet::add(const Rule& rule) {
  const std::size_t ab = rule.alpha * symbol_count_ + rule.beta;
  const std::size_t ba = rule.beta * symbol_count_ + rule.alpha;
  if (table_[ab] >= 0 || table_[ba] >= 0) return false;
  table_[ab] = static_cast<std::int32_t>(rules_.size());
  rules_.push_back(rule);
  if (rule.alpha != rule.beta) {
    table_[ba] = static_cast<std::int32_t>(rules_.size());
    rules_.push_back(mirrored(rule));
  }
  return true;
}

const Rule* RuleSet::find(SymbolId alpha, SymbolId beta) const {
  if (alpha >= symbol_count_ || beta >= symbol_count_) return nullptr;
  const auto idx = table_[alpha * symbol_count_ + beta];
  return idx < 0 ? nullptr : &rules_[static_cast<std::size_t>(idx)];
}

std::string FreshNameSource::next() {
  return "w#" + std::to_string(++counter_);
}

void collect_name_occurrences(const Term& t, std::vector<std::string>& out) {
  if (t.is_name()) {
    out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_name_occurrences(a, out);
}

namespace {

void insert_names(const Term& t, std::set<std::string>& out) {
  if (t.is_name()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) insert_names(a, out);
}

}  // namespace

std::set<std::string> names_of(const Term& t) {
  std::set<std::string> out;
  insert_names(t, out);
  return out;
}

std::set<std::string> names_of(const Equation& e) {
  std::set<std::string> out;
  insert_names(e.left, out);
  insert_names(e.right, out);
  return out;
}

std::set<std::string> names_of(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) insert_names(t, out);
  return out;
}

std::set<std::string> names_of(const std::vector<Equation>& es) {
  std::set<std::string> out;
  for (const auto& e : es) {
    insert_names(e.left, out);
    insert_names(e.right, out);
  }
  return out;
}

bool substitute_in_place(Term& t, std::string_view x, Term& u) {
  if (t.is_name()) {
    if (t.name != x) return false;
    t = std::move(u);
    return true;
  }
  for (auto& a : t.args) {
    if (substitute_in_place(a, x, u)) return true;
  }
  return false;
}

Term substitute(Term t, const Term& u, std::string_view x) {
  Term copy = u;
  substitute_in_place(t, x, copy);
  return t;
}

bool contains_name(const Term& t, std::string_view x) {
  if (t.is_name()) return t.name == x;
  for (const auto& a : t.args) {
    if (contains_name(a, x)) return true;
  }
  return false;
}

bool contains_ind(const Term& t) {
  if (t.is_ind()) return true;
  for (const auto& a : t.args) {
    if (contains_ind(a)) return true;
  }
  return false;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_size(a);
  return n;
}

Term rem_ind(Term t) {
  while (t.is_ind()) {
    Term inner = std::move(t.args.front());
    t = std::move(inner);
  }
  for (auto& a : t.args) a = rem_ind(std::move(a));
  return t;
}

namespace {

struct Instantiator {
  std::unordered_map<std::string, Term*> params;
  std::unordered_map<std::string, std::string> renamed;
  FreshNameSource& fresh;

  Term copy(const Term& t) {
    if (t.is_name()) {
      if (auto it = params.find(t.name); it != params.end()) {
        return std::move(*it->second);
      }
      auto [it, inserted] = renamed.try_emplace(t.name);
      if (inserted) it->second = fresh.next();
      return Term::make_name(it->second);
    }
    Term out;
    out.kind = t.kind;
    out.symbol = t.symbol;
    out.args.reserve(t.args.size());
    for (const auto& a : t.args) out.args.push_back(copy(a));
    return out;
  }
};

}  // namespace

std::vector<Equation> instantiate_rule_with(const Rule& rule,
                                            std::vector<Term>& left_args,
                                            std::vector<Term>& right_args,
                                            FreshNameSource& fresh) {
  Instantiator inst{{}, {}, fresh};
  for (std::size_t i = 0; i < rule.params_left.size(); ++i) {
    inst.params.emplace(rule.params_left[i], &left_args[i]);
  }
  for (std::size_t i = 0; i < rule.params_right.size(); ++i) {
    inst.params.emplace(rule.params_right[i], &right_args[i]);
  }
  std::vector<Equation> out;
  out.reserve(rule.rhs.size());
  for (const auto& e : rule.rhs) {
    Term l = inst.copy(e.left);
    Term r = inst.copy(e.right);
    out.push_back({std::move(l), std::move(r)});
  }
  return out;
}

std::vector<Equation> instantiate_rule(const Rule& rule,
                                       FreshNameSource& fresh) {
  std::vector<Term> left, right;
  for (const auto& p : rule.params_left) left.push_back(Term::make_name(p));
  for (const auto& p : rule.params_right) right.push_back(Term::make_name(p));
  return instantiate_rule_with(rule, left, right, fresh);
}

namespace {

Term rename_canonical(const Term& t,
                      std::unordered_map<std::string, std::string>& map) {
  if (t.is_name()) {
    auto [it, inserted] = map.try_emplace(t.name);
    if (inserted) it->second = "n" + std::to_string(map.size());
    return Term::make_name(it->second);
  }
  Term out;
  out.kind = t.kind;
  out.symbol = t.symbol;
  for (const auto& a : t.args) out.args.push_back(rename_canonical(a, map));
  return out;
}

}  // namespace

std::vector<Term> canonicalize(const std::vector<Term>& terms) {
  std::unordered_map<std::string, std::string> map;
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(rename_canonical(t, map));
  return out;
}

bool alpha_equivalent(const std::vector<Term>& a, const std::vector<Term>& b) {
  return a.size() == b.size() && canonicalize(a) == canonicalize(b);
}

bool is_linear(const std::vector<Term>& head,
               const std::vector<Equation>& body) {
  std::vector<std::string> occ;
  for (const auto& t : head) collect_name_occurrences(t, occ);
  for (const auto& e : body) {
    collect_name_occurrences(e.left, occ);
    collect_name_occurrences(e.right, occ);
  }
  std::unordered_map<std::string, int> count;
  for (const auto& n : occ) {
    if (++count[n] > 2) return false;
  }
  return true;
}

namespace {

void print_term(const Term& t, const Signature& sig, std::string& out) {
  switch (t.kind) {
    case Term::Kind::name:
      out += t.name;
      return;
    case Term::Kind::ind:
      out += '<';
      print_term(t.args.front(), sig, out);
      out += '>';
      return;
    case Term::Kind::agent:
      out += t.symbol < sig.size() ? sig.name(t.symbol)
                                   : "?" + std::to_string(t.symbol);
      if (!t.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
          if (i != 0) out += ',';
          print_term(t.args[i], sig, out);
        }
        out += ')';
      }
      return;
  }
}

}  // namespace

std::string pretty_term(const Term& t, const Signature& sig) {
  std::string out;
  print_term(t, sig, out);
  return out;
}

std::string pretty_equation(const Equation& e, const Signature& sig) {
  std::string out;
  print_term(e.left, sig, out);
  out += '=';
  print_term(e.right, sig, out);
  return out;
}

std::string pretty_terms(const std::vector<Term>& ts, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i != 0) out += ", ";
    print_term(ts[i], sig, out);
  }
  return out;
}

std::string pretty_equations(const std::vector<Equation>& es,
                             const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i != 0) out += ", ";
    out += pretty_equation(es[i], sig);
  }
  return out;
}

}  // namespace inet
