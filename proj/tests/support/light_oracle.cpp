#include "light_oracle.hpp"

#include <functional>
#include <map>
#include <optional>

namespace inet::testing {

namespace {

Term strip(const Term& t) {
  if (t.is_ind()) return strip(t.args[0]);
  Term out = t;
  for (auto& a : out.args) a = strip(a);
  return out;
}

bool occurs(const Term& t, const std::string& x) {
  if (t.is_name()) return t.name == x;
  for (const auto& a : t.args) {
    if (occurs(a, x)) return true;
  }
  return false;
}

Term replace(const Term& t, const std::map<std::string, Term>& sub) {
  if (t.is_name()) {
    auto it = sub.find(t.name);
    return it == sub.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = replace(a, sub);
  return out;
}

void names_into(const Term& t, std::set<std::string>& out) {
  if (t.is_name()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) names_into(a, out);
}

// Both orientations of an equation.
std::pair<const Term&, const Term&> side(const Equation& e, int o) {
  return o == 0 ? std::pair<const Term&, const Term&>{e.left, e.right}
                : std::pair<const Term&, const Term&>{e.right, e.left};
}

LightConfig without(const LightConfig& c, std::size_t i, std::size_t j = SIZE_MAX) {
  LightConfig out;
  out.head = c.head;
  for (std::size_t k = 0; k < c.body.size(); ++k) {
    if (k != i && k != j) out.body.push_back(c.body[k]);
  }
  return out;
}

}  // namespace

LightConfig strip_indirections(const SimpleConfig& s) {
  LightConfig out;
  for (const auto& t : s.head) out.head.push_back(strip(t));
  for (const auto& e : s.body) out.body.push_back({strip(e.left), strip(e.right)});
  return out;
}

std::set<std::string> config_names(const LightConfig& c) {
  std::set<std::string> out;
  for (const auto& t : c.head) names_into(t, out);
  for (const auto& e : c.body) {
    names_into(e.left, out);
    names_into(e.right, out);
  }
  return out;
}

std::vector<LightSuccessor> light_successors(const LightConfig& c,
                                             const std::vector<Rule>& rules) {
  std::vector<LightSuccessor> out;
  const std::size_t n = c.body.size();
  int fresh = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const Equation& e = c.body[i];
    // Interaction.
    if (e.left.is_agent() && e.right.is_agent()) {
      for (const auto& r : rules) {
        for (int o = 0; o < 2; ++o) {
          auto [a, b] = side(e, o);
          if (a.symbol != r.alpha || b.symbol != r.beta) continue;
          std::map<std::string, Term> sub;
          for (std::size_t k = 0; k < r.params_left.size(); ++k) sub[r.params_left[k]] = a.args[k];
          for (std::size_t k = 0; k < r.params_right.size(); ++k) sub[r.params_right[k]] = b.args[k];
          std::set<std::string> bound;
          for (const auto& q : r.rhs) {
            names_into(q.left, bound);
            names_into(q.right, bound);
          }
          for (const auto& x : bound) {
            if (sub.count(x) == 0) sub[x] = Term::make_name("o#" + std::to_string(++fresh));
          }
          LightConfig next = without(c, i);
          for (const auto& q : r.rhs) next.body.push_back({replace(q.left, sub), replace(q.right, sub)});
          out.push_back({StepRule::interaction, std::move(next)});
        }
      }
    }
    for (int o = 0; o < 2; ++o) {
      auto [x, t] = side(e, o);
      if (!x.is_name()) continue;
      // Communication: x = t, x = s  ->  t = s.
      for (std::size_t j = i + 1; j < n; ++j) {
        for (int p = 0; p < 2; ++p) {
          auto [y, s] = side(c.body[j], p);
          if (!y.is_name() || y.name != x.name) continue;
          LightConfig next = without(c, i, j);
          next.body.push_back({t, s});
          out.push_back({StepRule::communication, std::move(next)});
        }
      }
      // Substitution: beta(ts) = u, x = s with x in ts.
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int p = 0; p < 2; ++p) {
          auto [agent, u] = side(c.body[j], p);
          if (!agent.is_agent() || !occurs(agent, x.name)) continue;
          LightConfig next;
          next.head = c.head;
          for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            if (k == j) {
              next.body.push_back({replace(agent, {{x.name, t}}), u});
            } else {
              next.body.push_back(c.body[k]);
            }
          }
          out.push_back({StepRule::substitution, std::move(next)});
        }
      }
      // Collect: x in the head.
      bool in_head = false;
      for (const auto& h : c.head) in_head = in_head || occurs(h, x.name);
      if (in_head) {
        LightConfig next = without(c, i);
        for (auto& h : next.head) h = replace(h, {{x.name, t}});
        out.push_back({StepRule::collect, std::move(next)});
      }
    }
  }
  return out;
}

bool config_equivalent(const LightConfig& a, const LightConfig& b,
                       const std::set<std::string>& fixed) {
  if (a.head.size() != b.head.size() || a.body.size() != b.body.size()) return false;
  using Map = std::map<std::string, std::string>;

  std::function<bool(const Term&, const Term&, Map&, std::set<std::string>&)> match =
      [&](const Term& s, const Term& t, Map& m, std::set<std::string>& used) -> bool {
    if (s.kind != t.kind) return false;
    if (s.is_name()) {
      const bool sf = fixed.count(s.name) != 0;
      const bool tf = fixed.count(t.name) != 0;
      if (sf || tf) return sf && tf && s.name == t.name;
      if (auto it = m.find(s.name); it != m.end()) return it->second == t.name;
      if (used.count(t.name) != 0) return false;
      m[s.name] = t.name;
      used.insert(t.name);
      return true;
    }
    if (s.symbol != t.symbol || s.args.size() != t.args.size()) return false;
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      if (!match(s.args[i], t.args[i], m, used)) return false;
    }
    return true;
  };

  Map m;
  std::set<std::string> used;
  for (std::size_t i = 0; i < a.head.size(); ++i) {
    if (!match(a.head[i], b.head[i], m, used)) return false;
  }
  std::vector<char> taken(b.body.size(), 0);
  std::function<bool(std::size_t, const Map&, const std::set<std::string>&)> go =
      [&](std::size_t i, const Map& m0, const std::set<std::string>& u0) -> bool {
    if (i == a.body.size()) return true;
    for (std::size_t j = 0; j < b.body.size(); ++j) {
      if (taken[j]) continue;
      for (int o = 0; o < 2; ++o) {
        auto [l, r] = side(b.body[j], o);
        Map m1 = m0;
        std::set<std::string> u1 = u0;
        if (match(a.body[i].left, l, m1, u1) && match(a.body[i].right, r, m1, u1)) {
          taken[j] = 1;
          if (go(i + 1, m1, u1)) return true;
          taken[j] = 0;
        }
      }
    }
    return false;
  };
  return go(0, m, used);
}

}  // namespace inet::testing
