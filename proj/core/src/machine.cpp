#include <algorithm>
#include <unordered_set>
#include <utility>

#include "inet/calculus.hpp"
#include "inet/error.hpp"
#include "engine_detail.hpp"

namespace inet {

std::optional<StepRule> machine_step(MachineState& m, const RuleSet& rules,
                                     FreshNameSource& fresh, StepInfo* info) {
  if (m.todo.empty()) return std::nullopt;
  Equation& top = m.todo.back();
  if (info != nullptr) {
    info->before = top;
    info->after.clear();
  }

  StepRule applied;
  if (top.right.is_agent()) {
    if (top.left.is_agent()) {
      const Rule* rule = rules.find(top.left.symbol, top.right.symbol);
      if (rule == nullptr) throw_stuck(top.left, top.right);
      Equation pair = std::move(top);
      m.todo.pop_back();
      auto produced =
          instantiate_rule_with(*rule, pair.left.args, pair.right.args, fresh);
      if (info != nullptr) info->after = produced;
      for (auto& p : produced) m.todo.push_back(std::move(p));
      applied = StepRule::interaction;
    } else if (auto it = m.env.find(top.left.name); it != m.env.end()) {
      top.left = std::move(it->second);
      m.env.erase(it);
      if (info != nullptr) info->after.push_back(top);
      applied = StepRule::ind1;
    } else {
      std::string x = std::move(top.left.name);
      m.env.emplace(std::move(x), std::move(top.right));
      m.todo.pop_back();
      applied = StepRule::var1;
    }
  } else if (auto it = m.env.find(top.right.name); it != m.env.end()) {
    top.right = std::move(it->second);
    m.env.erase(it);
    if (info != nullptr) info->after.push_back(top);
    applied = StepRule::ind2;
  } else {
    if (top.left.is_name() && top.left.name == top.right.name) {
      throw Error(ErrorKind::self_capture,
                  "equation " + top.left.name + "=" + top.left.name +
                      " captures a name by itself");
    }
    std::string x = std::move(top.right.name);
    m.env.emplace(std::move(x), std::move(top.left));
    m.todo.pop_back();
    applied = StepRule::var2;
  }
  if (info != nullptr) info->rule = applied;
  return applied;
}

namespace {

class Resolver {
 public:
  explicit Resolver(std::unordered_map<std::string, Term>& env) : env_(env) {}

  void resolve(Term& t) {
    if (t.is_name()) {
      auto it = env_.find(t.name);
      if (it == env_.end()) {
        if (active_.count(t.name) != 0) cyclic(t.name);
        return;
      }
      const std::string x = t.name;
      Term bound = std::move(it->second);
      env_.erase(it);
      active_.insert(x);
      resolve(bound);
      active_.erase(x);
      t = std::move(bound);
      return;
    }
    for (auto& a : t.args) resolve(a);
  }

  // Resolves the binding of x as a root: x stays in place while its own
  // value is forced.
  Term resolve_root(const std::string& x) {
    auto it = env_.find(x);
    Term bound = std::move(it->second);
    env_.erase(it);
    active_.insert(x);
    resolve(bound);
    active_.erase(x);
    return bound;
  }

 private:
  [[noreturn]] static void cyclic(const std::string& x) {
    throw Error(ErrorKind::cyclic_indirection,
                "name " + x + " is bound to a term containing itself");
  }

  std::unordered_map<std::string, Term>& env_;
  std::unordered_set<std::string> active_;
};

}  // namespace

SimpleConfig machine_update(MachineState m) {
  SimpleConfig out{std::move(m.head), std::move(m.todo)};
  Resolver r(m.env);
  for (auto& t : out.head) r.resolve(t);
  for (auto& e : out.body) {
    r.resolve(e.left);
    r.resolve(e.right);
  }
  std::vector<std::string> rest;
  rest.reserve(m.env.size());
  for (const auto& [x, _] : m.env) rest.push_back(x);
  std::sort(rest.begin(), rest.end());
  for (const auto& x : rest) {
    if (m.env.count(x) == 0) continue;
    Term value = r.resolve_root(x);
    out.body.push_back({Term::make_name(x), std::move(value)});
  }
  return out;
}

MachineRun run_machine(MachineState m, const RuleSet& rules,
                       const RunLimits& limits, const TraceSink& trace) {
  FreshNameSource fresh;
  StepCounters counters;
  StepInfo info;
  for (;;) {
    auto rule = machine_step(m, rules, fresh, trace ? &info : nullptr);
    if (!rule) break;
    if (counters.steps >= limits.max_steps) {
      throw Error(ErrorKind::step_limit_exceeded,
                  "no normal form within " + std::to_string(limits.max_steps) +
                      " steps");
    }
    counters.record(*rule);
    if (trace) trace(counters.steps, info);
  }
  return {machine_update(std::move(m)), counters};
}

}  // namespace inet
