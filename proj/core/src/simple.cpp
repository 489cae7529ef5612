#include <utility>

#include "inet/calculus.hpp"
#include "inet/error.hpp"
#include "engine_detail.hpp"

namespace inet {

std::string_view to_string(StepRule rule) {
  switch (rule) {
    case StepRule::interaction: return "interaction";
    case StepRule::communication: return "communication";
    case StepRule::substitution: return "substitution";
    case StepRule::collect: return "collect";
    case StepRule::var1: return "var1";
    case StepRule::var2: return "var2";
    case StepRule::ind1: return "ind1";
    case StepRule::ind2: return "ind2";
  }
  return "?";
}

bool is_name_operation(StepRule rule) { return rule != StepRule::interaction; }

void StepCounters::record(StepRule rule) {
  ++steps;
  if (rule == StepRule::interaction) {
    ++interactions;
  } else {
    ++name_ops;
  }
}

std::string format_counters(const StepCounters& c) {
  return "interactions=" + std::to_string(c.interactions) +
         " name_ops=" + std::to_string(c.name_ops) +
         " steps=" + std::to_string(c.steps);
}

std::string format_trace_line(std::uint64_t n, const StepInfo& info,
                              const Signature& sig) {
  std::string out = "step " + std::to_string(n) + " " +
                    std::string(to_string(info.rule)) + " | " +
                    pretty_equation(info.before, sig) + " => ";
  out += info.after.empty() ? "-" : pretty_equations(info.after, sig);
  return out;
}

[[noreturn]] void throw_stuck(const Term& l, const Term& r) {
  throw Error(ErrorKind::stuck_active_pair,
              "no rule for active pair (" + std::to_string(l.symbol) + ", " +
                  std::to_string(r.symbol) + ")");
}

namespace {

// Replaces the other occurrence of x with `value`, searching the remaining
// stack from the top down, then the head. Without one the capture is lost.
void capture(SimpleConfig& cfg, const std::string& x, Term value) {
  for (std::size_t j = cfg.body.size(); j-- > 0;) {
    if (substitute_in_place(cfg.body[j].right, x, value)) return;
    if (substitute_in_place(cfg.body[j].left, x, value)) return;
  }
  for (auto& t : cfg.head) {
    if (substitute_in_place(t, x, value)) return;
  }
}

}  // namespace

std::optional<StepRule> simple_step(SimpleConfig& cfg, const RuleSet& rules,
                                    FreshNameSource& fresh, StepInfo* info) {
  if (cfg.body.empty()) return std::nullopt;
  Equation& top = cfg.body.back();
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
      cfg.body.pop_back();
      auto produced =
          instantiate_rule_with(*rule, pair.left.args, pair.right.args, fresh);
      if (info != nullptr) info->after = produced;
      for (auto& p : produced) cfg.body.push_back(std::move(p));
      applied = StepRule::interaction;
    } else if (top.left.is_ind()) {
      Term inner = std::move(top.left.args.front());
      top.left = std::move(inner);
      if (info != nullptr) info->after.push_back(top);
      applied = StepRule::ind1;
    } else {
      std::string x = std::move(top.left.name);
      Term t = std::move(top.right);
      cfg.body.pop_back();
      capture(cfg, x, Term::make_ind(std::move(t)));
      applied = StepRule::var1;
    }
  } else if (top.right.is_ind()) {
    Term inner = std::move(top.right.args.front());
    top.right = std::move(inner);
    if (info != nullptr) info->after.push_back(top);
    applied = StepRule::ind2;
  } else {
    if (top.left.is_name() && top.left.name == top.right.name) {
      throw Error(ErrorKind::self_capture,
                  "equation " + top.left.name + "=" + top.left.name +
                      " captures a name by itself");
    }
    std::string x = std::move(top.right.name);
    Term t = std::move(top.left);
    cfg.body.pop_back();
    capture(cfg, x, Term::make_ind(std::move(t)));
    applied = StepRule::var2;
  }
  if (info != nullptr) info->rule = applied;
  return applied;
}

SimpleRun run_simple(SimpleConfig cfg, const RuleSet& rules,
                     const RunLimits& limits, const TraceSink& trace) {
  SimpleRun run{std::move(cfg), {}};
  FreshNameSource fresh;
  StepInfo info;
  for (;;) {
    auto rule = simple_step(run.final, rules, fresh, trace ? &info : nullptr);
    if (!rule) break;
    if (run.counters.steps >= limits.max_steps) {
      throw Error(ErrorKind::step_limit_exceeded,
                  "no normal form within " + std::to_string(limits.max_steps) +
                      " steps");
    }
    run.counters.record(*rule);
    if (trace) trace(run.counters.steps, info);
  }
  return run;
}

LightConfig to_light(const SimpleConfig& s) {
  LightConfig c;
  c.head.reserve(s.head.size());
  for (const auto& t : s.head) c.head.push_back(rem_ind(t));
  c.body.reserve(s.body.size());
  for (const auto& e : s.body) c.body.push_back({rem_ind(e.left), rem_ind(e.right)});
  return c;
}

SimpleConfig to_simple(const LightConfig& c) { return {c.head, c.body}; }

}  // namespace inet
