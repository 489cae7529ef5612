#include "inet/driver.hpp"

#include "inet/optimizer.hpp"

namespace inet {

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::light: return "light";
    case Engine::simple: return "simple";
    case Engine::machine: return "machine";
    case Engine::vm: return "vm";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
  for (Engine e : all_engines()) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

const std::vector<Engine>& all_engines() {
  static const std::vector<Engine> all = {Engine::light, Engine::simple,
                                          Engine::machine, Engine::vm};
  return all;
}

LL0Program compile_source(const SourceProgram& program, bool optimize) {
  const RuleSet rules = build_rule_set(program);
  LL0Program p = compile_program(program.signature,
                                 {program.net.interface, program.net.equations}, rules);
  return optimize ? optimize_program(std::move(p)) : p;
}

RunOutcome run_program(const SourceProgram& program, const RunOptions& options) {
  const RuleSet rules = build_rule_set(program);
  const Signature& sig = program.signature;
  TraceSink sink;
  if (options.trace) {
    sink = [&](std::uint64_t n, const StepInfo& info) {
      options.trace(format_trace_line(n, info, sig));
    };
  }
  RunOutcome out;
  SimpleConfig cfg{program.net.interface, program.net.equations};
  switch (options.engine) {
    case Engine::light: {
      auto run = run_light(to_light(cfg), rules, options.limits, sink);
      out.interface = std::move(run.final.head);
      out.counters = run.counters;
      break;
    }
    case Engine::simple: {
      auto run = run_simple(std::move(cfg), rules, options.limits, sink);
      for (auto& t : run.final.head) out.interface.push_back(rem_ind(std::move(t)));
      out.counters = run.counters;
      break;
    }
    case Engine::machine: {
      auto run = run_machine(MachineState{{}, std::move(cfg.head), std::move(cfg.body)},
                             rules, options.limits, sink);
      for (auto& t : run.final.head) out.interface.push_back(rem_ind(std::move(t)));
      out.counters = run.counters;
      break;
    }
    case Engine::vm: {
      LL0Program p = compile_program(sig, cfg, rules);
      if (options.optimize) p = optimize_program(std::move(p));
      Vm vm(p, VmOptions{options.heap_cap, options.limits.max_steps});
      VmTraceSink vsink;
      if (options.trace) {
        vsink = [&](std::uint64_t, const std::string& line) { options.trace(line); };
      }
      vm.eval(vsink);
      out.interface = vm.readback();
      const VmCounters& c = vm.counters();
      out.counters = StepCounters{c.interactions, c.name_ops, c.steps};
      out.vm = c;
      out.live_nodes = vm.live_nodes();
      out.reachable_nodes = vm.reachable_nodes();
      break;
    }
  }
  return out;
}

std::string format_stats(const RunOutcome& outcome) {
  if (outcome.vm) return format_vm_counters(*outcome.vm);
  return format_counters(outcome.counters);
}

}  // namespace inet
