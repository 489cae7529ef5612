#include <algorithm>
#include <cstdlib>
#include <map>
#include <unordered_set>

#include "inet/error.hpp"
#include "inet/vm.hpp"

namespace inet {

std::size_t default_heap_cap() {
  if (const char* env = std::getenv("INET_HEAP_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 24;
}

std::string format_vm_counters(const VmCounters& c) {
  return "interactions=" + std::to_string(c.interactions) +
         " name_ops=" + std::to_string(c.name_ops) +
         " allocs=" + std::to_string(c.allocs) +
         " frees=" + std::to_string(c.frees) +
         " max_stack=" + std::to_string(c.max_stack);
}

namespace {

using Op = Vm::Op;

struct Resolver {
  const Signature& sig;
  int width;
  bool in_rule;
  bool claims_cell;
  std::map<std::string, std::int32_t, std::less<>> regs;

  [[noreturn]] static void bad(const std::string& msg) {
    throw Error(ErrorKind::invalid_program, msg);
  }

  std::uint32_t symbol(const std::string& name) const {
    auto id = sig.find(name);
    if (!id) throw Error(ErrorKind::undeclared_symbol, "symbol " + name + " is not declared");
    return *id + 1;
  }

  std::int32_t define(const std::string& var) {
    if (is_reserved_base(var)) bad("cannot assign to " + var);
    auto [it, fresh] = regs.emplace(var, static_cast<std::int32_t>(regs.size()));
    return it->second;
  }

  Op::Ref ref(const Operand& o) const {
    Op::Ref r;
    r.port = o.port;
    if (o.port < 0 || o.port > width) bad("port out of range in " + o.base);
    if (o.base == kLeft || o.base == kRight) {
      if (!in_rule) bad(o.base + " used outside a rule procedure");
      r.src = o.base == kLeft ? Op::Src::left : Op::Src::right;
    } else if (o.base == kStackLeft || o.base == kStackRight) {
      if (!in_rule || !claims_cell) bad(o.base + " needs a procedure without stackFree");
      r.src = o.base == kStackLeft ? Op::Src::stack_left : Op::Src::stack_right;
    } else {
      auto it = regs.find(o.base);
      if (it == regs.end()) bad("variable " + o.base + " read before written");
      r.src = Op::Src::reg;
      r.reg = it->second;
    }
    return r;
  }
};

}  // namespace

Vm::Proc Vm::resolve(const std::vector<Instruction>& code, bool in_rule) const {
  const bool claims_cell =
      in_rule && std::none_of(code.begin(), code.end(), [](const Instruction& i) {
        return std::holds_alternative<ll0::StackFree>(i);
      });
  Resolver rs{sig_, width_, in_rule, claims_cell, {}};
  Proc proc;
  proc.reclaim = claims_cell;
  for (const auto& ins : code) {
    Op op{};
    if (const auto* m = std::get_if<ll0::MkAgent>(&ins)) {
      op.code = Op::Code::mk_agent;
      op.n = rs.symbol(m->symbol);
      op.a.reg = rs.define(m->dst);
    } else if (const auto* m = std::get_if<ll0::MkName>(&ins)) {
      op.code = Op::Code::mk_name;
      op.a.reg = rs.define(m->dst);
      if (!in_rule) op.name = m->dst;
    } else if (const auto* f = std::get_if<ll0::Free>(&ins)) {
      op.code = Op::Code::free_node;
      op.a = rs.ref(f->node);
    } else if (const auto* s = std::get_if<ll0::SetPort>(&ins)) {
      op.code = Op::Code::set_port;
      if (s->port < 1 || s->port > width_) {
        Resolver::bad("port " + std::to_string(s->port) + " exceeds MAX_PORT");
      }
      op.a = rs.ref(s->target);
      op.n = static_cast<std::uint32_t>(s->port);
      op.b = rs.ref(s->value);
    } else if (const auto* s = std::get_if<ll0::SetId>(&ins)) {
      op.code = Op::Code::set_id;
      op.a = rs.ref(s->target);
      op.n = rs.symbol(s->symbol);
    } else if (const auto* p = std::get_if<ll0::Push>(&ins)) {
      op.code = Op::Code::push;
      op.a = rs.ref(p->left);
      op.b = rs.ref(p->right);
    } else if (std::holds_alternative<ll0::StackFree>(ins)) {
      if (!in_rule) Resolver::bad("stackFree outside a rule procedure");
      continue;  // eval has already popped the equation
    } else if (const auto* m = std::get_if<ll0::Move>(&ins)) {
      op.code = Op::Code::move;
      op.b = rs.ref(m->src);
      if (m->dst == kStackLeft || m->dst == kStackRight) {
        op.a = rs.ref(Operand{m->dst, 0});
      } else {
        op.a.src = Op::Src::reg;
        op.a.reg = rs.define(m->dst);
      }
    } else if (const auto* m = std::get_if<ll0::MkInterface>(&ins)) {
      if (in_rule) Resolver::bad("mkInterface inside a rule procedure");
      op.code = Op::Code::mk_interface;
      op.n = static_cast<std::uint32_t>(m->size);
    } else if (const auto* s = std::get_if<ll0::SetInterface>(&ins)) {
      if (in_rule) Resolver::bad("interface write inside a rule procedure");
      op.code = Op::Code::set_interface;
      op.n = static_cast<std::uint32_t>(s->slot);
      op.b = rs.ref(s->value);
    } else {
      Resolver::bad("#agent inside an instruction sequence");
    }
    proc.ops.push_back(std::move(op));
  }
  proc.regs = static_cast<int>(rs.regs.size());
  return proc;
}

Vm::Vm(const LL0Program& program, VmOptions options)
    : sig_(signature_of(program.decl)),
      width_(std::max(1, sig_.max_arity())),
      cap_(options.heap_cap),
      max_steps_(options.max_steps) {
  const std::size_t n = sig_.size() + 1;
  table_.assign(n * n, -1);
  for (const auto& proc : program.procedures) {
    auto a = sig_.find(proc.alpha);
    auto b = sig_.find(proc.beta);
    if (!a || !b) {
      throw Error(ErrorKind::undeclared_symbol,
                  "rule " + proc.alpha + " " + proc.beta + " names an undeclared symbol");
    }
    std::int32_t& slot = table_[(*a + 1) * n + (*b + 1)];
    if (slot >= 0) {
      throw Error(ErrorKind::invalid_program,
                  "second procedure for " + proc.alpha + " " + proc.beta);
    }
    slot = static_cast<std::int32_t>(procs_.size());
    procs_.push_back(resolve(proc.body, true));
  }
  const Proc build = resolve(program.build, false);
  std::vector<Handle> regs;
  run(build, kNull, kNull, regs);
}

Handle Vm::alloc(std::uint32_t id) {
  Handle h;
  if (!free_list_.empty()) {
    h = free_list_.back();
    free_list_.pop_back();
  } else {
    if (ids_.size() >= cap_) {
      throw Error(ErrorKind::heap_exhausted,
                  "heap capacity of " + std::to_string(cap_) + " nodes reached");
    }
    h = static_cast<Handle>(ids_.size());
    ids_.push_back(0);
    live_.push_back(0);
    ports_.resize(ports_.size() + static_cast<std::size_t>(width_), kNull);
  }
  ids_[h] = id;
  live_[h] = 1;
  std::fill_n(ports_.begin() + static_cast<std::ptrdiff_t>(index(h, 0)), width_, kNull);
  ++counters_.allocs;
  return h;
}

void Vm::release(Handle h) {
  if (h == kNull || h >= live_.size() || live_[h] == 0) {
    throw Error(ErrorKind::double_free,
                "node " + std::to_string(h) + " freed while not allocated");
  }
  live_[h] = 0;
  ids_[h] = 0xFFFFFFFEu;  // poison
  free_list_.push_back(h);
  if (!build_names_.empty()) build_names_.erase(h);
  ++counters_.frees;
}

void Vm::push(Handle a, Handle b) {
  stack_.emplace_back(a, b);
  counters_.max_stack = std::max<std::uint64_t>(counters_.max_stack, stack_.size());
}

void Vm::run(const Proc& proc, Handle l, Handle r, std::vector<Handle>& regs) {
  regs.assign(static_cast<std::size_t>(proc.regs), kNull);
  std::size_t cell = 0;
  if (proc.reclaim) {
    push(l, r);
    cell = stack_.size() - 1;
  }
  auto base = [&](const Op::Ref& ref) -> Handle {
    switch (ref.src) {
      case Op::Src::reg: return regs[static_cast<std::size_t>(ref.reg)];
      case Op::Src::left: return l;
      case Op::Src::right: return r;
      case Op::Src::stack_left: return stack_[cell].first;
      case Op::Src::stack_right: return stack_[cell].second;
    }
    return kNull;
  };
  auto read = [&](const Op::Ref& ref) -> Handle {
    const Handle h = base(ref);
    if (ref.port == 0) return h;
    return ports_[index(h, ref.port - 1)];
  };
  for (const Op& op : proc.ops) {
    switch (op.code) {
      case Op::Code::mk_agent:
        regs[static_cast<std::size_t>(op.a.reg)] = alloc(op.n);
        break;
      case Op::Code::mk_name: {
        const Handle h = alloc(kIdName);
        regs[static_cast<std::size_t>(op.a.reg)] = h;
        if (!op.name.empty()) build_names_[h] = op.name;
        break;
      }
      case Op::Code::free_node:
        release(read(op.a));
        break;
      case Op::Code::set_port: {
        const Handle target = read(op.a);
        ports_[index(target, static_cast<int>(op.n) - 1)] = read(op.b);
        break;
      }
      case Op::Code::set_id:
        ids_[read(op.a)] = op.n;
        break;
      case Op::Code::push:
        push(read(op.a), read(op.b));
        break;
      case Op::Code::move: {
        const Handle v = read(op.b);
        switch (op.a.src) {
          case Op::Src::stack_left: stack_[cell].first = v; break;
          case Op::Src::stack_right: stack_[cell].second = v; break;
          default: regs[static_cast<std::size_t>(op.a.reg)] = v; break;
        }
        break;
      }
      case Op::Code::mk_interface:
        iface_.assign(op.n, kNull);
        break;
      case Op::Code::set_interface:
        if (op.n < 1 || op.n > iface_.size()) {
          throw Error(ErrorKind::invalid_program,
                      "interface slot " + std::to_string(op.n) + " out of range");
        }
        iface_[op.n - 1] = read(op.b);
        break;
    }
  }
}

std::string Vm::render(Handle h, int depth) const {
  if (h == kNull) return "?";
  if (depth > 24) return "...";
  const std::uint32_t id = ids_[h];
  if (id == kIdName) {
    const Handle t = ports_[index(h, 0)];
    if (t == kNull) return "n" + std::to_string(h);
    return "<" + render(t, depth + 1) + ">";
  }
  const SymbolId s = id - 1;
  std::string out = sig_.name(s);
  const int ar = sig_.arity(s);
  if (ar > 0) {
    out += "(";
    for (int p = 0; p < ar; ++p) {
      if (p != 0) out += ",";
      out += render(ports_[index(h, p)], depth + 1);
    }
    out += ")";
  }
  return out;
}

void Vm::eval(const VmTraceSink& trace) {
  const std::size_t n = sig_.size() + 1;
  std::vector<Handle> regs;
  while (!stack_.empty()) {
    const auto [a1, a2] = stack_.back();
    stack_.pop_back();
    if (counters_.steps >= max_steps_) {
      throw Error(ErrorKind::step_limit_exceeded,
                  "no normal form within " + std::to_string(max_steps_) + " steps");
    }
    ++counters_.steps;
    if (a1 == kNull || a2 == kNull) {
      throw Error(ErrorKind::invalid_program, "equation with an unset side");
    }
    if (live_[a1] == 0 || live_[a2] == 0) {
      throw Error(ErrorKind::invalid_program, "equation refers to a freed node");
    }
    std::string before;
    if (trace) before = render(a1, 0) + "=" + render(a2, 0);
    StepRule rule;
    if (ids_[a2] != kIdName) {
      if (ids_[a1] != kIdName) {
        const std::int32_t p = table_[ids_[a1] * n + ids_[a2]];
        if (p < 0) {
          throw Error(ErrorKind::missing_rule,
                      "no rule for " + sig_.name(ids_[a1] - 1) + " " +
                          sig_.name(ids_[a2] - 1));
        }
        ++counters_.interactions;
        rule = StepRule::interaction;
        run(procs_[static_cast<std::size_t>(p)], a1, a2, regs);
      } else if (const Handle t = ports_[index(a1, 0)]; t != kNull) {
        ++counters_.name_ops;
        rule = StepRule::ind1;
        release(a1);
        push(t, a2);
      } else {
        ++counters_.name_ops;
        rule = StepRule::var1;
        ports_[index(a1, 0)] = a2;
      }
    } else if (const Handle t = ports_[index(a2, 0)]; t != kNull) {
      ++counters_.name_ops;
      rule = StepRule::ind2;
      release(a2);
      push(a1, t);
    } else {
      ++counters_.name_ops;
      rule = StepRule::var2;
      ports_[index(a2, 0)] = a1;
    }
    if (trace) {
      trace(counters_.steps, "step " + std::to_string(counters_.steps) + " " +
                                 std::string(to_string(rule)) + " | " + before);
    }
  }
}

std::vector<Term> Vm::readback() const {
  std::unordered_set<Handle> on_path;
  std::unordered_map<Handle, std::string> fresh;
  auto cyclic = [] {
    throw Error(ErrorKind::cyclic_indirection,
                "interface reaches a name bound to itself");
  };
  std::function<Term(Handle)> read = [&](Handle h) -> Term {
    if (h == kNull) throw Error(ErrorKind::invalid_program, "dangling port");
    std::vector<Handle> chain;
    while (ids_[h] == kIdName && ports_[index(h, 0)] != kNull) {
      if (!on_path.insert(h).second) cyclic();
      chain.push_back(h);
      h = ports_[index(h, 0)];
      if (h == kNull) throw Error(ErrorKind::invalid_program, "dangling port");
    }
    Term out;
    if (ids_[h] == kIdName) {
      if (auto it = build_names_.find(h); it != build_names_.end()) {
        out = Term::make_name(it->second);
      } else {
        auto [it2, inserted] = fresh.emplace(h, std::string());
        if (inserted) it2->second = "v#" + std::to_string(fresh.size());
        out = Term::make_name(it2->second);
      }
    } else {
      if (!on_path.insert(h).second) cyclic();
      const SymbolId s = ids_[h] - 1;
      std::vector<Term> args;
      const int ar = sig_.arity(s);
      args.reserve(static_cast<std::size_t>(ar));
      for (int p = 0; p < ar; ++p) args.push_back(read(ports_[index(h, p)]));
      on_path.erase(h);
      out = Term::make_agent(s, std::move(args));
    }
    for (Handle c : chain) on_path.erase(c);
    return out;
  };
  std::vector<Term> out;
  out.reserve(iface_.size());
  for (Handle h : iface_) {
    if (h == kNull) {
      throw Error(ErrorKind::invalid_program, "interface slot never written");
    }
    out.push_back(read(h));
  }
  return out;
}

std::size_t Vm::live_nodes() const {
  return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), 1));
}

std::size_t Vm::live_agent_nodes() const {
  std::size_t k = 0;
  for (std::size_t h = 0; h < live_.size(); ++h) {
    if (live_[h] != 0 && ids_[h] != kIdName) ++k;
  }
  return k;
}

std::size_t Vm::live_name_nodes() const {
  return live_nodes() - live_agent_nodes();
}

std::size_t Vm::reachable_nodes() const {
  std::unordered_set<Handle> seen;
  std::vector<Handle> todo(iface_.begin(), iface_.end());
  while (!todo.empty()) {
    const Handle h = todo.back();
    todo.pop_back();
    if (h == kNull || !seen.insert(h).second) continue;
    if (ids_[h] == kIdName) {
      todo.push_back(ports_[index(h, 0)]);
    } else {
      const int ar = sig_.arity(ids_[h] - 1);
      for (int p = 0; p < ar; ++p) todo.push_back(ports_[index(h, p)]);
    }
  }
  return seen.size();
}

}  // namespace inet
