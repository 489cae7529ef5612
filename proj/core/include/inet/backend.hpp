#pragma once

// C99 back end: one self-contained source file per LL0 program. LL0 port p
// becomes port[p-1]; L and R become the rule function's a1 and a2.

#include <string>
#include <vector>

#include "inet/ll0.hpp"

namespace inet {

struct EmittedUnit {
  std::string source;
  std::vector<std::string> functions;      // Alpha_Beta, in procedure order
  std::vector<std::string> registrations;  // R[ID_Alpha][ID_Beta]=&Alpha_Beta;
};

EmittedUnit emit_backend(const LL0Program& p);

// Body of a single rule function, from "void Alpha_Beta(" to the closing
// brace.
std::string emit_rule_function(const RuleProcedure& proc);

}  // namespace inet
