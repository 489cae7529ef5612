#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>

#include "inet/error.hpp"

namespace inet::cli {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  const auto sizes = spec.sizes.empty() ? default_sizes(spec.family) : spec.sizes;
  const auto& engines = spec.engines.empty() ? all_engines() : spec.engines;
  std::vector<BenchRow> rows;
  for (const auto& params : sizes) {
    const SourceProgram program = parse_source(family_source(spec.family, params));
    for (Engine e : engines) {
      BenchRow row;
      row.net = family_label(spec.family, params);
      row.engine = e;
      RunOptions opts;
      opts.engine = e;
      opts.optimize = spec.optimize;
      for (int rep = 0; rep < std::max(1, spec.repetitions); ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        const RunOutcome out = run_program(program, opts);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        const std::string readback = pretty_terms(canonicalize(out.interface), program.signature);
        if (rep == 0) {
          row.interactions = out.counters.interactions;
          row.name_ops = out.counters.name_ops;
          if (out.vm) row.allocs = out.vm->allocs;
          row.readback = readback;
        } else if (row.interactions != out.counters.interactions ||
                   row.name_ops != out.counters.name_ops || row.readback != readback) {
          throw Error(ErrorKind::invalid_program,
                      row.net + " on " + std::string(to_string(e)) +
                          " changed between repetitions");
        }
        if (spec.timing) row.wall_ms = row.wall_ms ? std::min(*row.wall_ms, ms) : ms;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool header) {
  if (header) out << "net,engine,interactions,name_ops,ratio,allocs,wall_ms\n";
  for (const auto& r : rows) {
    out << '"' << r.net << "\"," << to_string(r.engine) << ',' << r.interactions << ','
        << r.name_ops << ',' << fixed(r.ratio(), 4) << ',';
    if (r.allocs) out << *r.allocs;
    out << ',';
    if (r.wall_ms) out << fixed(*r.wall_ms, 3);
    out << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << std::left << std::setw(16) << "net" << std::setw(9) << "engine" << std::right
      << std::setw(12) << "I" << std::setw(12) << "N" << std::setw(8) << "N/I"
      << std::setw(12) << "allocs" << std::setw(12) << "wall_ms" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(16) << r.net << std::setw(9) << to_string(r.engine)
        << std::right << std::setw(12) << r.interactions << std::setw(12) << r.name_ops
        << std::setw(8) << fixed(r.ratio(), 2) << std::setw(12)
        << (r.allocs ? std::to_string(*r.allocs) : "-") << std::setw(12)
        << (r.wall_ms ? fixed(*r.wall_ms, 3) : "-") << '\n';
  }
}

}  // namespace inet::cli
