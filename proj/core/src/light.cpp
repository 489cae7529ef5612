#include <algorithm>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "inet/calculus.hpp"
#include "inet/error.hpp"
#include "engine_detail.hpp"

namespace inet {

namespace {

struct Occurrence {
  bool inside;        // strictly inside a side rather than the whole side
  std::size_t index;  // equation index
  int side;           // 0 = left, 1 = right
};

// Body occurrences only; a name seen once here may still occur in the head.
using OccurrenceIndex =
    std::unordered_map<std::string_view, std::vector<Occurrence>>;

void index_inside(const Term& t, std::size_t index, int side, OccurrenceIndex& idx) {
  if (t.is_name()) {
    idx[t.name].push_back({true, index, side});
    return;
  }
  for (const auto& a : t.args) index_inside(a, index, side, idx);
}

OccurrenceIndex build_index(const LightConfig& cfg) {
  OccurrenceIndex idx;
  for (std::size_t j = 0; j < cfg.body.size(); ++j) {
    const Equation& e = cfg.body[j];
    for (int s = 0; s < 2; ++s) {
      const Term& t = s == 0 ? e.left : e.right;
      if (t.is_name()) {
        idx[t.name].push_back({false, j, s});
      } else {
        index_inside(t, j, s, idx);
      }
    }
  }
  return idx;
}

Term& side_of(Equation& e, int s) { return s == 0 ? e.left : e.right; }

struct Redex {
  StepRule rule;
  std::size_t eq;     // equation holding the acting name (or active pair)
  int side = 0;       // side of `eq` that is the name
  Occurrence other{};  // the name's other occurrence (body redexes)
};

bool head_contains(const LightConfig& cfg, std::string_view x) {
  return std::any_of(cfg.head.begin(), cfg.head.end(),
                     [&](const Term& t) { return contains_name(t, x); });
}

// Redexes found by scanning equations from last to first. With `all` every
// redex is returned; otherwise only the default choice, by priority.
std::vector<Redex> find_redexes(const LightConfig& cfg, bool all) {
  std::vector<Redex> out;
  const auto& body = cfg.body;
  for (std::size_t j = body.size(); j-- > 0;) {
    if (body[j].left.is_agent() && body[j].right.is_agent()) {
      out.push_back({StepRule::interaction, j});
      if (!all) return out;
    }
  }
  const OccurrenceIndex idx = build_index(cfg);
  std::vector<Redex> collects;
  bool have_sub = false;
  for (std::size_t j = body.size(); j-- > 0;) {
    const Equation& e = body[j];
    if (e.left.is_agent() && e.right.is_agent()) continue;
    for (int s = 0; s < 2; ++s) {
      const Term& t = s == 0 ? e.left : e.right;
      if (!t.is_name()) continue;
      const auto& occs = idx.at(t.name);
      if (occs.size() == 1) {
        if (all && head_contains(cfg, t.name)) {
          collects.push_back({StepRule::collect, j, s});
        }
        continue;
      }
      if (occs.size() != 2) continue;
      const bool first_is_me = !occs[0].inside && occs[0].index == j && occs[0].side == s;
      const Occurrence& other = first_is_me ? occs[1] : occs[0];
      if (!other.inside) {
        // Each communicating pair is reported once, from its later
        // equation; x = x is never a redex.
        if (other.index < j) {
          out.push_back({StepRule::communication, j, s, other});
          if (!all) return out;
        }
      } else if (other.index != j && (all || !have_sub)) {
        out.push_back({StepRule::substitution, j, s, other});
        have_sub = true;
      }
    }
  }
  if (!all && !out.empty()) return out;
  if (all) {
    out.insert(out.end(), collects.begin(), collects.end());
    return out;
  }
  // Default Collect: the last equation whose name also occurs in the head.
  for (std::size_t j = body.size(); j-- > 0;) {
    const Equation& e = body[j];
    for (int s = 0; s < 2; ++s) {
      const Term& t = s == 0 ? e.left : e.right;
      if (!t.is_name() || idx.at(t.name).size() != 1) continue;
      if (head_contains(cfg, t.name)) return {{StepRule::collect, j, s}};
    }
  }
  return {};
}

const Redex* pick_default(const std::vector<Redex>& redexes) {
  return redexes.empty() ? nullptr : &redexes.front();
}

}  // namespace

std::optional<StepRule> light_step(LightConfig& cfg, const RuleSet& rules,
                                   FreshNameSource& fresh, StepInfo* info,
                                   std::mt19937_64* rng) {
  const auto redexes = find_redexes(cfg, rng != nullptr);
  if (redexes.empty()) return std::nullopt;
  const Redex* chosen = nullptr;
  if (rng != nullptr) {
    std::uniform_int_distribution<std::size_t> dist(0, redexes.size() - 1);
    chosen = &redexes[dist(*rng)];
  } else {
    chosen = pick_default(redexes);
  }
  const Redex r = *chosen;
  auto& body = cfg.body;
  if (info != nullptr) {
    info->rule = r.rule;
    info->before = body[r.eq];
    info->after.clear();
  }

  switch (r.rule) {
    case StepRule::interaction: {
      const Equation& e = body[r.eq];
      const Rule* rule = rules.find(e.left.symbol, e.right.symbol);
      if (rule == nullptr) throw_stuck(e.left, e.right);
      Equation pair = std::move(body[r.eq]);
      body.erase(body.begin() + static_cast<std::ptrdiff_t>(r.eq));
      auto produced =
          instantiate_rule_with(*rule, pair.left.args, pair.right.args, fresh);
      if (info != nullptr) info->after = produced;
      for (auto& p : produced) body.push_back(std::move(p));
      break;
    }
    case StepRule::communication: {
      // x = t (earlier), x = s (later)  ->  t = s
      const std::size_t lo = r.other.index;
      const std::size_t hi = r.eq;
      Term t = std::move(side_of(body[lo], 1 - r.other.side));
      Term s = std::move(side_of(body[hi], 1 - r.side));
      body.erase(body.begin() + static_cast<std::ptrdiff_t>(hi));
      body.erase(body.begin() + static_cast<std::ptrdiff_t>(lo));
      body.push_back({std::move(t), std::move(s)});
      if (info != nullptr) info->after.push_back(body.back());
      break;
    }
    case StepRule::substitution: {
      const std::string x = side_of(body[r.eq], r.side).name;
      Term s = std::move(side_of(body[r.eq], 1 - r.side));
      substitute_in_place(side_of(body[r.other.index], r.other.side), x, s);
      if (info != nullptr) info->after.push_back(body[r.other.index]);
      body.erase(body.begin() + static_cast<std::ptrdiff_t>(r.eq));
      break;
    }
    case StepRule::collect: {
      const std::string x = side_of(body[r.eq], r.side).name;
      Term s = std::move(side_of(body[r.eq], 1 - r.side));
      for (auto& t : cfg.head) {
        if (substitute_in_place(t, x, s)) break;
      }
      body.erase(body.begin() + static_cast<std::ptrdiff_t>(r.eq));
      break;
    }
    default:
      break;
  }
  return r.rule;
}

LightRun run_light(LightConfig cfg, const RuleSet& rules,
                   const RunLimits& limits, const TraceSink& trace) {
  LightRun run{std::move(cfg), {}};
  FreshNameSource fresh;
  std::optional<std::mt19937_64> rng;
  if (limits.seed) rng.emplace(*limits.seed);
  StepInfo info;
  for (;;) {
    auto rule = light_step(run.final, rules, fresh, trace ? &info : nullptr,
                           rng ? &*rng : nullptr);
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

}  // namespace inet
