#pragma once

// One entry point over the four engines, as used by the CLI, the bench
// harness and the tests.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inet/calculus.hpp"
#include "inet/syntax.hpp"
#include "inet/vm.hpp"

namespace inet {

enum class Engine { light, simple, machine, vm };

std::string_view to_string(Engine e);
std::optional<Engine> parse_engine(std::string_view name);
const std::vector<Engine>& all_engines();

struct RunOptions {
  Engine engine = Engine::simple;
  RunLimits limits;
  bool optimize = false;  // vm only
  std::size_t heap_cap = default_heap_cap();
  // Receives one formatted trace line per step.
  std::function<void(const std::string&)> trace;
};

struct RunOutcome {
  std::vector<Term> interface;  // indirection-free
  StepCounters counters;        // I, N and steps for every engine
  std::optional<VmCounters> vm;
  std::size_t live_nodes = 0;       // vm only
  std::size_t reachable_nodes = 0;  // vm only
};

// Validates the program, then evaluates its net. Throws Error.
RunOutcome run_program(const SourceProgram& program, const RunOptions& options);

// Compiles the net and rules to LL0, optionally optimized.
LL0Program compile_source(const SourceProgram& program, bool optimize = false);

// The calculus stats line, or the VM block for vm runs.
std::string format_stats(const RunOutcome& outcome);

}  // namespace inet
