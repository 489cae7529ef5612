#pragma once

// Reference semantics: the Lightweight calculus (unordered equations), the
// Simpler calculus (equation stack with indirections), the environment
// machine, and the translations between them.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "inet/term.hpp"

namespace inet {

enum class StepRule : std::uint8_t {
  interaction,
  communication,
  substitution,
  collect,
  var1,
  var2,
  ind1,
  ind2,
};

std::string_view to_string(StepRule rule);
bool is_name_operation(StepRule rule);

struct StepInfo {
  StepRule rule;
  Equation before;
  std::vector<Equation> after;
};

// "step <n> <rule> | <before> => <after...>", "-" when nothing is produced.
std::string format_trace_line(std::uint64_t n, const StepInfo& info,
                              const Signature& sig);

struct StepCounters {
  std::uint64_t interactions = 0;
  std::uint64_t name_ops = 0;
  std::uint64_t steps = 0;

  void record(StepRule rule);
  bool operator==(const StepCounters& other) const = default;
};

// interactions=<I> name_ops=<N> steps=<S>
std::string format_counters(const StepCounters& c);

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000'000;

struct RunLimits {
  std::uint64_t max_steps = kDefaultStepLimit;
  // Lightweight engine only: pick uniformly among all redexes instead of
  // the default priority order.
  std::optional<std::uint64_t> seed;
};

using TraceSink = std::function<void(std::uint64_t, const StepInfo&)>;

// --- Lightweight calculus ---------------------------------------------------

// Steps mutate the configuration in place and return the rule applied;
// `info`, when given, receives the rewritten equation and its replacement.
//
// Lightweight step. Default selection: Interaction > Communication >
// Substitution > Collect, the last eligible equation first. With an rng the
// redex is drawn uniformly from every applicable one. Returns nullopt in
// normal form; throws StuckActivePair.
std::optional<StepRule> light_step(LightConfig& cfg, const RuleSet& rules,
                                   FreshNameSource& fresh,
                                   StepInfo* info = nullptr,
                                   std::mt19937_64* rng = nullptr);

struct LightRun {
  LightConfig final;
  StepCounters counters;
};

LightRun run_light(LightConfig cfg, const RuleSet& rules,
                   const RunLimits& limits = {}, const TraceSink& trace = {});

// --- Simpler calculus -------------------------------------------------------

// Acts on body.back(). The right-hand side is inspected first, mirroring
// the runtime eval loop:
//   agent = agent          Interaction
//   <t> = agent            Indirection1
//   x = agent              Var1
//   t = <s>                Indirection2
//   t = x                  Var2 (t may itself be an indirection)
// Throws StuckActivePair, SelfCapture (x = x).
std::optional<StepRule> simple_step(SimpleConfig& cfg, const RuleSet& rules,
                                    FreshNameSource& fresh,
                                    StepInfo* info = nullptr);

struct SimpleRun {
  SimpleConfig final;
  StepCounters counters;
};

SimpleRun run_simple(SimpleConfig cfg, const RuleSet& rules,
                     const RunLimits& limits = {}, const TraceSink& trace = {});

// --- translations -------------------------------------------------------------

LightConfig to_light(const SimpleConfig& s);
// Keeps the given (declaration) order of the multiset.
SimpleConfig to_simple(const LightConfig& c);

// --- abstract machine ---------------------------------------------------------

struct MachineState {
  std::unordered_map<std::string, Term> env;
  std::vector<Term> head;
  std::vector<Equation> todo;  // back() is the stack top
};

// Transitions A, B1, B2, C1, C2 on the top equation, dispatched on the right
// side first (same branch order as simple_step). Throws StuckActivePair,
// SelfCapture.
std::optional<StepRule> machine_step(MachineState& m, const RuleSet& rules,
                                     FreshNameSource& fresh,
                                     StepInfo* info = nullptr);

// Forces every captured term back into the configuration. Bindings whose
// name no longer occurs anywhere are re-emitted as x=s. Throws
// CyclicIndirection if a name is transitively bound to itself.
SimpleConfig machine_update(MachineState m);

struct MachineRun {
  SimpleConfig final;  // after machine_update
  StepCounters counters;
};

MachineRun run_machine(MachineState m, const RuleSet& rules,
                       const RunLimits& limits = {},
                       const TraceSink& trace = {});

}  // namespace inet
