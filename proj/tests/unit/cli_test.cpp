#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bench.hpp"
#include "cli.hpp"
#include "test_util.hpp"

namespace inet {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "inet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string example() { return testing::nets_path("add_example.inet"); }

std::string temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

TEST(Cli, CheckAcceptsExample) {
  const Result r = cli({"check", example()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok: 3 agents, 2 rules\n");
}

TEST(Cli, CheckRejectsBadPrograms) {
  const std::string triple =
      temp_file("inet_triple.inet", "agent Z:0, S:1\nnet <r>: S(r) = S(r), r = Z;\n");
  EXPECT_EQ(cli({"check", triple}).code, cli::kExitInput);
  const Result missing = cli({"check", "/nonexistent/x.inet"});
  EXPECT_EQ(missing.code, cli::kExitInput);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  const std::string dup = temp_file(
      "inet_dup.inet",
      std::string(testing::kAddRulesOnly) + "rule Z >< Add(a, b) => a = b;\nnet <r>: Add(Z, r) = Z;\n");
  const Result d = cli({"check", dup});
  EXPECT_EQ(d.code, cli::kExitInput);
  EXPECT_FALSE(d.err.empty());
}

TEST(Cli, RunEveryEngine) {
  for (const char* e : {"light", "simple", "machine", "vm"}) {
    const Result r = cli({"run", example(), "--engine", e, "--stats"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 5), "S(Z)\n");
    EXPECT_NE(r.out.find("interactions=2 "), std::string::npos);
  }
}

TEST(Cli, SeedsDoNotChangeOutput) {
  const std::string first = cli({"run", example(), "--engine", "light", "--seed", "0"}).out;
  for (const char* s : {"1", "2", "99", "12345"}) {
    EXPECT_EQ(cli({"run", example(), "--engine", "light", "--seed", s}).out, first);
  }
}

TEST(Cli, StepLimitExitCode) {
  const Result r = cli({"run", example(), "--max-steps", "1"});
  EXPECT_EQ(r.code, cli::kExitLimit);
  EXPECT_NE(r.err.find("StepLimitExceeded"), std::string::npos);
}

TEST(Cli, RuntimeFailureExitCodes) {
  const std::string stuck = temp_file("inet_stuck.inet", "agent A:0, B:0\nnet <>: A = B;\n");
  EXPECT_EQ(cli({"run", stuck}).code, cli::kExitRuntime);
  EXPECT_EQ(cli({"run", stuck, "--engine", "vm"}).code, cli::kExitRuntime);
  const std::string self = temp_file("inet_self.inet", "agent A:0\nnet <>: x = x;\n");
  EXPECT_EQ(cli({"run", self}).code, cli::kExitRuntime);
  const Result heap = cli({"run", example(), "--engine", "vm", "--heap-cap", "3"});
  EXPECT_EQ(heap.code, cli::kExitHeap);
}

TEST(Cli, TraceGoesToStderr) {
  const Result r = cli({"run", example(), "--trace"});
  EXPECT_EQ(r.out, "S(Z)\n");
  EXPECT_NE(r.err.find("step 4 var2"), std::string::npos);
}

TEST(Cli, CompileAndEmit) {
  const Result ll0 = cli({"compile", example()});
  EXPECT_EQ(ll0.code, 0);
  EXPECT_EQ(std::count(ll0.out.begin(), ll0.out.end(), '\n'), 12 + 2 * 6 + 2 * 13);
  const Result opt = cli({"compile", example(), "--optimize"});
  EXPECT_NE(opt.out.find("StackR"), std::string::npos);
  const auto path = (std::filesystem::temp_directory_path() / "inet_add.c").string();
  const Result c = cli({"emit-c", example(), "-o", path});
  EXPECT_EQ(c.code, 0);
  const std::string text = testing::slurp(path);
  EXPECT_NE(text.find("void Add_Z(Agent *a1, Agent *a2)"), std::string::npos);
  EXPECT_NE(text.find("void Add_S(Agent *a1, Agent *a2)"), std::string::npos);
  const std::string empty = temp_file("inet_empty.inet", "agent Z:0\nnet <>: ;\n");
  const Result e = cli({"compile", empty});
  EXPECT_EQ(e.out, "#agent Z:0\nI=mkInterface(0)\n");
}

TEST(Cli, BenchCsvIsStable) {
  const Result a = cli({"bench", "--family", "add", "--family", "church", "--csv"});
  const Result b = cli({"bench", "--family", "add", "--family", "church", "--csv", "--reps", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')),
            "net,engine,interactions,name_ops,ratio,allocs,wall_ms");
  EXPECT_NE(a.out.find("\"add(3,4)\",vm,5,5,1.0000,23,\n"), std::string::npos) << a.out;
}

TEST(Cli, BenchSizeNeedsOneFamily) {
  EXPECT_EQ(cli({"bench", "--size", "3,4"}).code, cli::kExitInput);
  EXPECT_EQ(cli({"bench", "--family", "add", "--size", "x"}).code, cli::kExitInput);
  const Result r = cli({"bench", "--family", "add", "--size", "2,6", "--engine", "simple"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("add(2,6)"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, cli::kExitInput);
  EXPECT_EQ(cli({"run", example(), "--engine", "warp"}).code, cli::kExitInput);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Bench, RowsCoverEnginesAndSizes) {
  cli::BenchSpec spec;
  spec.family = Family::fib;
  spec.sizes = {{4}, {6}};
  const auto rows = cli::run_bench(spec);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    for (std::size_t k = 1; k < 4; ++k) {
      EXPECT_EQ(rows[i + k].interactions, rows[i].interactions);
      EXPECT_EQ(rows[i + k].readback, rows[i].readback);
    }
    EXPECT_EQ(rows[i + 1].name_ops, rows[i + 2].name_ops);  // simple, machine
    EXPECT_EQ(rows[i + 2].name_ops, rows[i + 3].name_ops);  // machine, vm
    EXPECT_TRUE(rows[i + 3].allocs.has_value());
    EXPECT_FALSE(rows[i].allocs.has_value());
  }
}

}  // namespace
}  // namespace inet
