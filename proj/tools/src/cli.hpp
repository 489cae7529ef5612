#pragma once

#include <iosfwd>

namespace inet::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;    // usage, syntax, validation, io
inline constexpr int kExitRuntime = 2;  // stuck pair, self capture, cycle, missing rule
inline constexpr int kExitLimit = 3;
inline constexpr int kExitHeap = 4;
inline constexpr int kExitDoubleFree = 5;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace inet::cli
