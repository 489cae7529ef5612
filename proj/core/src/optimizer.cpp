#include <algorithm>
#include <set>

#include "inet/error.hpp"
#include "inet/optimizer.hpp"
#include "inet/vm.hpp"

namespace inet {

namespace {

template <class F>
void for_each_operand(Instruction& ins, F&& f) {
  std::visit(
      [&](auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, ll0::Free>) {
          f(i.node);
        } else if constexpr (std::is_same_v<T, ll0::SetPort>) {
          f(i.target);
          f(i.value);
        } else if constexpr (std::is_same_v<T, ll0::SetId>) {
          f(i.target);
        } else if constexpr (std::is_same_v<T, ll0::Push>) {
          f(i.left);
          f(i.right);
        } else if constexpr (std::is_same_v<T, ll0::SetInterface>) {
          f(i.value);
        } else if constexpr (std::is_same_v<T, ll0::Move>) {
          f(i.src);
        }
      },
      ins);
}

std::set<std::string> variables(std::vector<Instruction>& body) {
  std::set<std::string> out;
  for (auto& ins : body) {
    if (auto* m = std::get_if<ll0::MkAgent>(&ins)) out.insert(m->dst);
    if (auto* m = std::get_if<ll0::MkName>(&ins)) out.insert(m->dst);
    if (auto* m = std::get_if<ll0::Move>(&ins)) out.insert(m->dst);
    for_each_operand(ins, [&](Operand& o) { out.insert(o.base); });
  }
  return out;
}

bool is_free_of(const Instruction& ins, std::string_view base) {
  const auto* f = std::get_if<ll0::Free>(&ins);
  return f != nullptr && f->node.base == base && f->node.port == 0;
}

// The pair node `side` may be overwritten: it is freed, and otherwise only
// its ports are read.
bool disposable(std::vector<Instruction>& body, std::string_view side) {
  bool freed = false;
  bool bare_use = false;
  for (auto& ins : body) {
    if (is_free_of(ins, side)) {
      freed = true;
      continue;
    }
    if (auto* s = std::get_if<ll0::SetPort>(&ins); s && s->target.base == side) {
      bare_use = true;
    }
    for_each_operand(ins, [&](Operand& o) {
      if (o.base == side && o.port == 0) bare_use = true;
    });
  }
  return freed && !bare_use;
}

struct Reuse {
  std::string side;  // "L" or "R"
  std::string var;   // mkAgent variable replaced by the side
};

void apply_reuse(std::vector<Instruction>& body, const std::vector<Reuse>& reuses) {
  std::set<std::string> taken = variables(body);
  std::vector<Instruction> loads;
  // Temporaries for the old ports of every reused node.
  std::vector<std::pair<Operand, std::string>> temps;
  auto temp_for = [&](const Operand& o) -> std::string {
    for (const auto& [src, t] : temps) {
      if (src == o) return t;
    }
    std::string t = (o.base == kLeft ? "l" : "r") + std::to_string(o.port);
    while (taken.count(t) != 0) t += '_';
    taken.insert(t);
    temps.emplace_back(o, t);
    loads.push_back(ll0::Move{t, o});
    return t;
  };
  for (const auto& r : reuses) {
    for (auto& ins : body) {
      for_each_operand(ins, [&](Operand& o) {
        if (o.base == r.side && o.port > 0) o = Operand{temp_for(o), 0};
      });
    }
  }
  std::vector<Instruction> out;
  for (auto& ins : body) {
    bool drop = false;
    for (const auto& r : reuses) {
      if (auto* m = std::get_if<ll0::MkAgent>(&ins); m && m->dst == r.var) drop = true;
      if (is_free_of(ins, r.side)) drop = true;
      for_each_operand(ins, [&](Operand& o) {
        if (o.base == r.var) o.base = r.side;
      });
    }
    if (!drop) out.push_back(std::move(ins));
  }
  // Loads go after the leading stackFree/mkName block.
  auto at = std::find_if(out.begin(), out.end(), [](const Instruction& i) {
    return !std::holds_alternative<ll0::StackFree>(i) &&
           !std::holds_alternative<ll0::MkName>(i);
  });
  out.insert(at, loads.begin(), loads.end());

  // A temporary written straight back to the port it came from is a no-op.
  for (const auto& [src, t] : temps) {
    std::size_t uses = 0;
    for (auto& ins : out) {
      for_each_operand(ins, [&](Operand& o) {
        if (o.base == t) ++uses;
      });
    }
    auto same_port = [&, &src = src, &t = t](const Instruction& i) {
      const auto* s = std::get_if<ll0::SetPort>(&i);
      return s != nullptr && s->target == Operand{src.base, 0} &&
             s->port == src.port && s->value == Operand{t, 0};
    };
    if (uses == 1 && std::any_of(out.begin(), out.end(), same_port)) {
      out.erase(std::remove_if(out.begin(), out.end(),
                               [&, &src = src, &t = t](const Instruction& i) {
                                 if (same_port(i)) return true;
                                 const auto* m = std::get_if<ll0::Move>(&i);
                                 return m != nullptr && m->dst == t && m->src == src;
                               }),
                out.end());
    }
  }
  body = std::move(out);
}

void apply_cell_reuse(std::vector<Instruction>& body) {
  auto sf = std::find_if(body.begin(), body.end(), [](const Instruction& i) {
    return std::holds_alternative<ll0::StackFree>(i);
  });
  auto first_push = std::find_if(body.begin(), body.end(), [](const Instruction& i) {
    return std::holds_alternative<ll0::Push>(i);
  });
  if (sf == body.end() || first_push == body.end()) return;
  const ll0::Push p = std::get<ll0::Push>(*first_push);
  std::vector<Instruction> out;
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (it == sf) continue;
    if (it == first_push) {
      if (!(p.left == Operand{std::string(kLeft), 0})) {
        out.push_back(ll0::Move{std::string(kStackLeft), p.left});
      }
      if (!(p.right == Operand{std::string(kRight), 0})) {
        out.push_back(ll0::Move{std::string(kStackRight), p.right});
      }
      continue;
    }
    out.push_back(std::move(*it));
  }
  body = std::move(out);
}

}  // namespace

RuleProcedure optimize_rule(const RuleProcedure& proc) {
  RuleProcedure out = proc;
  auto& body = out.body;
  std::vector<Reuse> reuses;
  for (const auto& [side, symbol] :
       {std::pair<std::string, std::string>{std::string(kLeft), proc.alpha},
        std::pair<std::string, std::string>{std::string(kRight), proc.beta}}) {
    if (!disposable(body, side)) continue;
    for (auto& ins : body) {
      auto* m = std::get_if<ll0::MkAgent>(&ins);
      if (m == nullptr || m->symbol != symbol) continue;
      const bool used = std::any_of(reuses.begin(), reuses.end(),
                                    [&](const Reuse& r) { return r.var == m->dst; });
      const bool freed = std::any_of(body.begin(), body.end(), [&](const Instruction& i) {
        return is_free_of(i, m->dst);
      });
      if (used || freed) continue;
      reuses.push_back({side, m->dst});
      break;
    }
  }
  if (reuses.empty()) return out;
  apply_reuse(body, reuses);
  apply_cell_reuse(body);
  return out;
}

std::vector<RuleProcedure> optimize_procedures(const std::vector<RuleProcedure>& procs) {
  std::vector<RuleProcedure> out;
  out.reserve(procs.size());
  for (const auto& p : procs) out.push_back(optimize_rule(p));
  return out;
}

LL0Program optimize_program(LL0Program p) {
  p.procedures = optimize_procedures(p.procedures);
  return p;
}

EquivalenceReport verify_equivalence(const std::vector<RuleProcedure>& original,
                                     const std::vector<RuleProcedure>& optimized,
                                     const std::vector<LL0Program>& nets) {
  EquivalenceReport report;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    ++report.checked;
    const std::string label = "net " + std::to_string(i + 1) + ": ";
    LL0Program a = nets[i];
    LL0Program b = nets[i];
    a.procedures = original;
    b.procedures = optimized;
    try {
      Vm va(a);
      va.eval();
      const auto ra = va.readback();
      try {
        Vm vb(b);
        vb.eval();
        const auto rb = vb.readback();
        if (!alpha_equivalent(ra, rb)) {
          report.failures.push_back(label + "readback differs: " +
                                    pretty_terms(ra, va.signature()) + " vs " +
                                    pretty_terms(rb, vb.signature()));
        } else if (va.counters().interactions != vb.counters().interactions) {
          report.failures.push_back(
              label + "interaction count " + std::to_string(va.counters().interactions) +
              " vs " + std::to_string(vb.counters().interactions));
        } else if (vb.counters().allocs > va.counters().allocs) {
          report.failures.push_back(label + "optimized run allocates more nodes");
        }
      } catch (const Error& e) {
        report.failures.push_back(label + "optimized run failed: " + e.what());
      }
    } catch (const Error& e) {
      report.failures.push_back(label + "reference run failed: " + e.what());
    }
  }
  return report;
}

}  // namespace inet
