#include <algorithm>
#include <cctype>
#include <set>

#include "inet/error.hpp"
#include "inet/ll0.hpp"

namespace inet {

namespace {

int prefix_slot(char prefix) {
  switch (prefix) {
    case 'a': return 0;
    case 'b': return 1;
    default: return 2;
  }
}

// a12, b3, c1: shapes reserved for generated variables.
bool looks_generated(const std::string& v) {
  if (v.size() < 2 || (v[0] != 'a' && v[0] != 'b' && v[0] != 'c')) return false;
  return std::all_of(v.begin() + 1, v.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

bool VarSupply::taken(const std::string& v) const {
  return used_.count(v) != 0;
}

std::string VarSupply::next(char prefix) {
  int& n = counters_[prefix_slot(prefix)];
  std::string v;
  do {
    v = std::string(1, prefix) + std::to_string(++n);
  } while (taken(v));
  used_.insert(v);
  return v;
}

std::string VarSupply::for_name(const std::string& name) {
  std::string v;
  for (char c : name) {
    v += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  if (v.empty() || std::isdigit(static_cast<unsigned char>(v[0]))) v = "n" + v;
  while (taken(v) || looks_generated(v) || is_reserved_base(v) ||
         v == "free" || v == "push" || v == "stackFree" || v == "mkAgent" ||
         v == "mkName" || v == "mkInterface" || v == "rule") {
    v += '_';
  }
  used_.insert(v);
  return v;
}

ll0::AgentDecl compile_symbols(const Signature& sig) {
  return ll0::AgentDecl{sig.entries()};
}

std::vector<Instruction> make_n(const std::vector<std::string>& names,
                                NameEnv& env, VarSupply& vars) {
  std::vector<Instruction> out;
  for (const auto& x : names) {
    const std::string v = vars.for_name(x);
    env[x] = Operand{v, 0};
    out.push_back(ll0::MkName{v});
  }
  return out;
}

namespace {

Operand compile_term_into(const Term& t, const NameEnv& env, const Signature& sig,
                          VarSupply& vars, char prefix, std::vector<Instruction>& code) {
  if (t.is_name()) {
    auto it = env.find(t.name);
    if (it == env.end()) {
      throw Error(ErrorKind::invalid_program, "name " + t.name + " has no variable");
    }
    return it->second;
  }
  if (t.is_ind()) {
    throw Error(ErrorKind::invalid_program, "indirections cannot be compiled");
  }
  const std::string a = vars.next(prefix);
  code.push_back(ll0::MkAgent{a, sig.name(t.symbol)});
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    Operand where = compile_term_into(t.args[i], env, sig, vars, prefix, code);
    code.push_back(ll0::SetPort{Operand{a, 0}, static_cast<int>(i) + 1, std::move(where)});
  }
  return Operand{a, 0};
}

}  // namespace

std::pair<std::vector<Instruction>, Operand> compile_term(
    const Term& t, const NameEnv& env, const Signature& sig, VarSupply& vars,
    char prefix) {
  std::vector<Instruction> code;
  Operand where = compile_term_into(t, env, sig, vars, prefix, code);
  return {std::move(code), std::move(where)};
}

std::vector<Instruction> compile_interface(const std::vector<Term>& u,
                                           const NameEnv& env,
                                           const Signature& sig,
                                           VarSupply& vars) {
  std::vector<Instruction> code;
  code.push_back(ll0::MkInterface{static_cast<int>(u.size())});
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto [sub, where] = compile_term(u[i], env, sig, vars, 'c');
    code.insert(code.end(), sub.begin(), sub.end());
    code.push_back(ll0::SetInterface{static_cast<int>(i) + 1, where});
  }
  return code;
}

std::vector<Instruction> compile_equation(const Equation& e, const NameEnv& env,
                                          const Signature& sig,
                                          VarSupply& vars) {
  auto [left, a1] = compile_term(e.left, env, sig, vars, 'a');
  auto [right, a2] = compile_term(e.right, env, sig, vars, 'b');
  left.insert(left.end(), right.begin(), right.end());
  left.push_back(ll0::Push{a1, a2});
  return left;
}

std::vector<Instruction> compile_equations(const std::vector<Equation>& es,
                                           const NameEnv& env,
                                           const Signature& sig,
                                           VarSupply& vars) {
  std::vector<Instruction> code;
  for (const auto& e : es) {
    auto c = compile_equation(e, env, sig, vars);
    code.insert(code.end(), c.begin(), c.end());
  }
  return code;
}

namespace {

void first_occurrences(const Term& t, std::vector<std::string>& seen,
                       std::set<std::string>& known) {
  std::vector<std::string> occ;
  collect_name_occurrences(t, occ);
  for (auto& x : occ) {
    if (known.insert(x).second) seen.push_back(x);
  }
}

}  // namespace

LL0Program compile_config(const Signature& sig, const SimpleConfig& cfg) {
  LL0Program p;
  p.decl = compile_symbols(sig);
  std::vector<std::string> names;
  std::set<std::string> known;
  for (const auto& t : cfg.head) first_occurrences(t, names, known);
  for (const auto& e : cfg.body) {
    first_occurrences(e.left, names, known);
    first_occurrences(e.right, names, known);
  }
  VarSupply vars;
  NameEnv env;
  p.build = make_n(names, env, vars);
  auto eqs = compile_equations(cfg.body, env, sig, vars);
  auto iface = compile_interface(cfg.head, env, sig, vars);
  p.build.insert(p.build.end(), eqs.begin(), eqs.end());
  p.build.insert(p.build.end(), iface.begin(), iface.end());
  return p;
}

RuleProcedure compile_rule(const Rule& rule, const Signature& sig) {
  NameEnv env;
  VarSupply vars;
  for (std::size_t i = 0; i < rule.params_left.size(); ++i) {
    env[rule.params_left[i]] = Operand{std::string(kLeft), static_cast<int>(i) + 1};
  }
  for (std::size_t j = 0; j < rule.params_right.size(); ++j) {
    env[rule.params_right[j]] = Operand{std::string(kRight), static_cast<int>(j) + 1};
  }
  std::vector<std::string> bound;
  std::set<std::string> known;
  for (const auto& e : rule.rhs) {
    first_occurrences(e.left, bound, known);
    first_occurrences(e.right, bound, known);
  }
  bound.erase(std::remove_if(bound.begin(), bound.end(),
                             [&](const std::string& x) { return env.count(x) != 0; }),
              bound.end());

  RuleProcedure proc{sig.name(rule.alpha), sig.name(rule.beta), {}};
  proc.body.push_back(ll0::StackFree{});
  auto names = make_n(bound, env, vars);
  auto eqs = compile_equations(rule.rhs, env, sig, vars);
  proc.body.insert(proc.body.end(), names.begin(), names.end());
  proc.body.insert(proc.body.end(), eqs.begin(), eqs.end());
  proc.body.push_back(ll0::Free{Operand{std::string(kLeft), 0}});
  proc.body.push_back(ll0::Free{Operand{std::string(kRight), 0}});
  return proc;
}

std::vector<RuleProcedure> compile_rules(const RuleSet& rules,
                                         const Signature& sig) {
  std::vector<RuleProcedure> out;
  out.reserve(rules.rules().size());
  for (const auto& r : rules.rules()) out.push_back(compile_rule(r, sig));
  return out;
}

LL0Program compile_program(const Signature& sig, const SimpleConfig& net,
                           const RuleSet& rules) {
  LL0Program p = compile_config(sig, net);
  p.procedures = compile_rules(rules, sig);
  return p;
}

namespace {

template <class T>
std::size_t count_of(const std::vector<Instruction>& code) {
  return static_cast<std::size_t>(std::count_if(
      code.begin(), code.end(),
      [](const Instruction& i) { return std::holds_alternative<T>(i); }));
}

}  // namespace

std::size_t count_mk_agent(const std::vector<Instruction>& code) {
  return count_of<ll0::MkAgent>(code);
}
std::size_t count_mk_name(const std::vector<Instruction>& code) {
  return count_of<ll0::MkName>(code);
}
std::size_t count_push(const std::vector<Instruction>& code) {
  return count_of<ll0::Push>(code);
}

}  // namespace inet
