#pragma once

// Active-pair reuse for rule procedures. Two rewrites:
//  - node reuse: the first agent built with the same symbol as L (or R)
//    is written into L (R) instead of a fresh node, with the old ports of
//    L (R) loaded into temporaries up front;
//  - cell reuse: the first push overwrites the popped stack cell through
//    StackL/StackR instead of growing the stack, and stackFree is dropped.
//    Only applied together with node reuse; other procedures are left as
//    they are.

#include <string>
#include <vector>

#include "inet/ll0.hpp"

namespace inet {

RuleProcedure optimize_rule(const RuleProcedure& proc);
std::vector<RuleProcedure> optimize_procedures(
    const std::vector<RuleProcedure>& procs);
LL0Program optimize_program(LL0Program p);

struct EquivalenceReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Runs every net with both procedure sets on the VM. A net passes when the
// readbacks are alpha-equivalent, I is unchanged and the optimized run
// allocates no more nodes.
EquivalenceReport verify_equivalence(const std::vector<RuleProcedure>& original,
                                     const std::vector<RuleProcedure>& optimized,
                                     const std::vector<LL0Program>& nets);

}  // namespace inet
