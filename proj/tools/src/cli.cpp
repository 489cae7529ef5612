#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bench.hpp"
#include "inet/backend.hpp"
#include "inet/driver.hpp"
#include "inet/error.hpp"
#include "inet/families.hpp"
#include "inet/ll0.hpp"

namespace inet::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot write " + path);
  f << text;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::stuck_active_pair:
    case ErrorKind::self_capture:
    case ErrorKind::cyclic_indirection:
    case ErrorKind::missing_rule:
      return kExitRuntime;
    case ErrorKind::step_limit_exceeded: return kExitLimit;
    case ErrorKind::heap_exhausted: return kExitHeap;
    case ErrorKind::double_free: return kExitDoubleFree;
    default: return kExitInput;
  }
}

std::string error_text(const Error& e, const std::string& file) {
  return file.empty() ? std::string(e.what()) : file + ": " + e.what();
}

std::vector<int> parse_size(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_program, "bad size '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"inet: interaction net compiler and runtimes"};
  app.require_subcommand(1);

  std::string file;
  std::string output;

  auto* check = app.add_subcommand("check", "parse and validate a program");
  check->add_option("file", file, "source file")->required();

  std::string engine_name = "simple";
  bool stats = false;
  bool trace = false;
  bool optimize = false;
  std::uint64_t max_steps = kDefaultStepLimit;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> heap_cap;
  auto* run = app.add_subcommand("run", "evaluate the net and print the interface");
  run->add_option("file", file, "source file")->required();
  run->add_option("--engine", engine_name, "light|simple|machine|vm")
      ->check(CLI::IsMember({"light", "simple", "machine", "vm"}));
  run->add_flag("--stats", stats, "print counters after the readback");
  run->add_flag("--trace", trace, "print one line per step to stderr");
  run->add_option("--max-steps", max_steps, "step limit");
  run->add_option("--seed", seed, "light engine: random redex choice");
  run->add_flag("--optimize", optimize, "vm: apply active-pair reuse");
  run->add_option("--heap-cap", heap_cap, "vm: node capacity");

  auto* compile = app.add_subcommand("compile", "compile to LL0 text");
  compile->add_option("file", file, "source file")->required();
  compile->add_option("-o,--output", output, "output file (default stdout)");
  compile->add_flag("--optimize", optimize, "apply active-pair reuse");

  auto* emit = app.add_subcommand("emit-c", "emit a C99 program");
  emit->add_option("file", file, "source file")->required();
  emit->add_option("-o,--output", output, "output file (default stdout)");
  emit->add_flag("--optimize", optimize, "apply active-pair reuse");

  std::vector<std::string> families;
  std::vector<std::string> sizes;
  std::vector<std::string> engines;
  bool csv = false;
  bool timing = false;
  int reps = 1;
  auto* bench = app.add_subcommand("bench", "run the benchmark families");
  bench->add_option("--family", families, "add|fib|ack|church|all (repeatable)")
      ->check(CLI::IsMember({"add", "fib", "ack", "church", "all"}));
  bench->add_option("--size", sizes, "parameters, e.g. \"3,4\" (repeatable)");
  bench->add_option("--engine", engines, "engine (repeatable, default all)")
      ->check(CLI::IsMember({"light", "simple", "machine", "vm"}));
  bench->add_flag("--csv", csv, "CSV output");
  bench->add_flag("--timing", timing, "record wall time");
  bench->add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
  bench->add_flag("--optimize", optimize, "vm: apply active-pair reuse");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) {
      const SourceProgram p = parse_source(read_file(file));
      const auto diags = validate(p);
      for (const auto& d : diags) err << file << ":" << format_diagnostic(d) << "\n";
      if (!diags.empty()) return kExitInput;
      out << "ok: " << p.signature.size() << " agents, " << p.rules.size() << " rules\n";
      return kExitOk;
    }
    if (*run) {
      const SourceProgram p = parse_source(read_file(file));
      RunOptions opts;
      opts.engine = *parse_engine(engine_name);
      opts.limits.max_steps = max_steps;
      opts.limits.seed = seed;
      opts.optimize = optimize;
      if (heap_cap) opts.heap_cap = *heap_cap;
      if (trace) opts.trace = [&](const std::string& line) { err << line << "\n"; };
      const RunOutcome o = run_program(p, opts);
      out << pretty_terms(o.interface, p.signature) << "\n";
      if (stats) out << format_stats(o) << "\n";
      return kExitOk;
    }
    if (*compile) {
      const SourceProgram p = parse_source(read_file(file));
      write_output(output, print_ll0(compile_source(p, optimize)), out);
      return kExitOk;
    }
    if (*emit) {
      const SourceProgram p = parse_source(read_file(file));
      write_output(output, emit_backend(compile_source(p, optimize)).source, out);
      return kExitOk;
    }
    if (*bench) {
      std::vector<Family> fams;
      for (const auto& f : families) {
        if (f == "all") {
          fams = all_families();
          break;
        }
        fams.push_back(*parse_family(f));
      }
      if (fams.empty()) fams = all_families();
      if (!sizes.empty() && fams.size() != 1) {
        throw Error(ErrorKind::invalid_program, "--size needs exactly one --family");
      }
      std::vector<BenchRow> rows;
      for (Family f : fams) {
        BenchSpec spec;
        spec.family = f;
        for (const auto& s : sizes) spec.sizes.push_back(parse_size(s));
        for (const auto& e : engines) spec.engines.push_back(*parse_engine(e));
        spec.optimize = optimize;
        spec.repetitions = reps;
        spec.timing = timing;
        auto part = run_bench(spec);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      if (csv) {
        write_csv(out, rows);
      } else {
        write_table(out, rows);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << error_text(e, file) << "\n";
    return exit_code(e.kind());
  }
  return kExitInput;
}

}  // namespace inet::cli
