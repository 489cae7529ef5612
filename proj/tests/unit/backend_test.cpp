#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include "inet/backend.hpp"
#include "inet/driver.hpp"
#include "inet/families.hpp"
#include "inet/vm.hpp"
#include "listings.hpp"
#include "test_util.hpp"

namespace inet {
namespace {

using testing::c_tokens;


const RuleProcedure& proc(const LL0Program& p, const std::string& a, const std::string& b) {
  for (const auto& x : p.procedures) {
    if (x.alpha == a && x.beta == b) return x;
  }
  throw std::runtime_error("missing procedure");
}

TEST(Backend, AddZTokensMatch) {
  const LL0Program p = compile_source(testing::load_net("add_example.inet"));
  EXPECT_EQ(c_tokens(emit_rule_function(proc(p, "Add", "Z"))), c_tokens(testing::kAddZFunction));
}

TEST(Backend, AddSTokensMatch) {
  const LL0Program p = compile_source(testing::load_net("add_example.inet"));
  const std::string ours = emit_rule_function(proc(p, "Add", "S"));
  EXPECT_EQ(c_tokens(ours), c_tokens(testing::kAddSFunction)) << ours;
}

TEST(Backend, UnitLayout) {
  const LL0Program p = compile_source(testing::load_net("add_example.inet"));
  const EmittedUnit u = emit_backend(p);
  const std::string& s = u.source;
  const std::vector<std::string> in_order = {
      "#define ID_NAME 0", "#define ID_Z 1", "#define ID_S 2", "#define ID_Add 3",
      "#define MAX_AGENTID 3", "Symbols[", "Arities[", "#define SIZE_INTERFACE 1",
      "void Add_Z(Agent *a1, Agent *a2)", "void registerRules", "R[ID_Add][ID_Z]=&Add_Z;",
      "void eval", "int main"};
  std::size_t at = 0;
  for (const auto& piece : in_order) {
    const std::size_t found = s.find(piece, at);
    ASSERT_NE(found, std::string::npos) << piece;
    at = found;
  }
  EXPECT_EQ(u.functions.size(), 4u);
  EXPECT_EQ(u.registrations.size(), 4u);
  for (const auto& f : u.functions) EXPECT_NE(s.find("void " + f + "("), std::string::npos);
  for (const auto& r : u.registrations) EXPECT_NE(s.find(r), std::string::npos);
}

TEST(Backend, BoundNamesShadowingParametersStayDistinct) {
  // The bound name a1 and the first generated agent would both print as a1_.
  const LL0Program p = compile_source(parse_source(
      "agent Z:0, S:1, Dup:2\n"
      "rule Dup(a, b) >< S(x) => Dup(a1, b1) = x, a = S(a1), b = S(b1);\n"
      "net <>: ;\n"));
  const std::string f = emit_rule_function(p.procedures.front());
  std::set<std::string> declared;
  const std::regex decl(R"(Agent \*(\w+)=)");
  for (auto it = std::sregex_iterator(f.begin(), f.end(), decl); it != std::sregex_iterator(); ++it) {
    EXPECT_TRUE(declared.insert((*it)[1]).second) << (*it)[1] << " declared twice\n" << f;
  }
  EXPECT_EQ(declared.size(), 5u) << f;
}

TEST(Backend, NoRulesStillEmitsTables) {
  const EmittedUnit u = emit_backend(compile_source(parse_source("agent Z:0\nnet <>: ;\n")));
  EXPECT_TRUE(u.functions.empty());
  EXPECT_NE(u.source.find("#define ID_Z 1"), std::string::npos);
  EXPECT_NE(u.source.find("Arities["), std::string::npos);
}

// Runs only where a C compiler is installed.
class CompiledBackend : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* cc = std::getenv("CC");
    compiler_ = cc != nullptr && *cc != '\0' ? cc : "cc";
    if (std::system(("command -v " + compiler_ + " >/dev/null 2>&1").c_str()) != 0) {
      GTEST_SKIP() << "no C compiler";
    }
    dir_ = std::filesystem::temp_directory_path() /
           ("inet_backend_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override {
    if (!dir_.empty()) std::filesystem::remove_all(dir_);
  }

  std::string compile_and_run(const std::string& source, const std::string& tag) {
    const auto c = dir_ / (tag + ".c");
    const auto exe = dir_ / tag;
    const auto out = dir_ / (tag + ".out");
    std::ofstream(c) << source;
    const std::string build = compiler_ + " -std=c99 -O1 -Wall -Wextra -Werror -o " +
                              exe.string() + " " + c.string() + " 2>&1";
    if (std::system(build.c_str()) != 0) return "<compile failed>";
    if (std::system((exe.string() + " > " + out.string()).c_str()) != 0) return "<run failed>";
    return testing::slurp(out.string());
  }

  std::string compiler_;
  std::filesystem::path dir_;
};

TEST_F(CompiledBackend, AddFamilyMatchesVm) {
  for (const auto& sz : default_sizes(Family::add)) {
    for (bool optimize : {false, true}) {
      const SourceProgram src = parse_source(family_source(Family::add, sz));
      const LL0Program p = compile_source(src, optimize);
      Vm vm(p);
      vm.eval();
      const std::string expected = pretty_terms(vm.readback(), vm.signature()) + "\n" +
                                   format_vm_counters(vm.counters()) + "\n";
      EXPECT_EQ(compile_and_run(emit_backend(p).source, "add" + std::to_string(optimize)),
                expected)
          << family_label(Family::add, sz);
    }
  }
}

TEST_F(CompiledBackend, OtherFamiliesMatchVm) {
  for (Family f : {Family::fib, Family::ack, Family::church}) {
    const auto sz = default_sizes(f).front();
    const LL0Program p = compile_source(parse_source(family_source(f, sz)));
    Vm vm(p);
    vm.eval();
    const std::string out = compile_and_run(emit_backend(p).source, std::string(to_string(f)));
    EXPECT_EQ(out, pretty_terms(vm.readback(), vm.signature()) + "\n" +
                       format_vm_counters(vm.counters()) + "\n");
  }
}

}  // namespace
}  // namespace inet
