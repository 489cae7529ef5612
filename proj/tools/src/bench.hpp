#pragma once

// Benchmark harness: runs family nets across engines and tabulates the
// interaction and name-operation counters.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "inet/driver.hpp"
#include "inet/families.hpp"

namespace inet::cli {

struct BenchSpec {
  Family family = Family::add;
  std::vector<std::vector<int>> sizes;  // empty: default_sizes(family)
  std::vector<Engine> engines;          // empty: all four
  bool optimize = false;
  int repetitions = 1;
  bool timing = false;
};

struct BenchRow {
  std::string net;
  Engine engine = Engine::simple;
  std::uint64_t interactions = 0;
  std::uint64_t name_ops = 0;
  std::optional<std::uint64_t> allocs;  // vm only
  std::optional<double> wall_ms;        // best of the repetitions, --timing only
  std::string readback;

  double ratio() const {
    return interactions == 0 ? 0.0
                             : static_cast<double>(name_ops) / static_cast<double>(interactions);
  }
};

// Throws Error if a repetition disagrees with the first one.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool header = true);
void write_table(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace inet::cli
