#include <gtest/gtest.h>

#include "inet/driver.hpp"
#include "inet/families.hpp"
#include "inet/vm.hpp"
#include "netgen.hpp"

namespace inet {

void PrintTo(Family f, std::ostream* os) { *os << to_string(f); }

namespace {

RunOutcome run(const SourceProgram& p, Engine e, bool optimize = false) {
  RunOptions o;
  o.engine = e;
  o.optimize = optimize;
  return run_program(p, o);
}

class FamilyNets : public ::testing::TestWithParam<Family> {};

TEST_P(FamilyNets, VmMatchesSimpleExactly) {
  for (const auto& sz : default_sizes(GetParam())) {
    const SourceProgram p = parse_source(family_source(GetParam(), sz));
    const RunOutcome ref = run(p, Engine::simple);
    for (Engine e : {Engine::machine, Engine::vm}) {
      const RunOutcome r = run(p, e);
      EXPECT_TRUE(alpha_equivalent(r.interface, ref.interface)) << family_label(GetParam(), sz);
      EXPECT_EQ(r.counters.interactions, ref.counters.interactions);
      EXPECT_EQ(r.counters.name_ops, ref.counters.name_ops);
    }
    const RunOutcome l = run(p, Engine::light);
    EXPECT_TRUE(alpha_equivalent(l.interface, ref.interface));
    EXPECT_EQ(l.counters.interactions, ref.counters.interactions);
  }
}

TEST_P(FamilyNets, OptimizedVmKeepsResultsAndAllocatesLess) {
  for (const auto& sz : default_sizes(GetParam())) {
    const SourceProgram p = parse_source(family_source(GetParam(), sz));
    const RunOutcome plain = run(p, Engine::vm);
    const RunOutcome opt = run(p, Engine::vm, true);
    EXPECT_TRUE(alpha_equivalent(plain.interface, opt.interface));
    EXPECT_EQ(plain.counters.interactions, opt.counters.interactions);
    EXPECT_EQ(plain.counters.name_ops, opt.counters.name_ops);
    EXPECT_LE(opt.vm->allocs, plain.vm->allocs);
  }
}

TEST_P(FamilyNets, HeapHygiene) {
  for (const auto& sz : default_sizes(GetParam())) {
    const SourceProgram p = parse_source(family_source(GetParam(), sz));
    for (bool optimize : {false, true}) {
      const RunOutcome r = run(p, Engine::vm, optimize);
      ASSERT_TRUE(r.vm.has_value());
      EXPECT_EQ(r.vm->allocs - r.vm->frees, r.live_nodes);
      EXPECT_EQ(r.live_nodes, r.reachable_nodes) << family_label(GetParam(), sz);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, FamilyNets,
                         ::testing::Values(Family::add, Family::fib, Family::ack, Family::church),
                         [](const auto& info) { return std::string(to_string(info.param)); });

// Erasers leave nothing behind, so the random nets check that freed nodes
// are exactly the unreachable ones.
TEST(HeapHygiene, RandomNets) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_arith_net(rng);
    const SourceProgram p = parse_source(g.source);
    for (bool optimize : {false, true}) {
      const RunOutcome r = run(p, Engine::vm, optimize);
      EXPECT_EQ(r.vm->allocs - r.vm->frees, r.live_nodes);
      EXPECT_EQ(r.live_nodes, r.reachable_nodes) << g.source;
    }
  }
}

double ratio(const RunOutcome& r) {
  return static_cast<double>(r.counters.name_ops) / static_cast<double>(r.counters.interactions);
}

TEST(NameRatios, ChurchSimpleExceedsLight) {
  for (const auto& sz : default_sizes(Family::church)) {
    const SourceProgram p = parse_source(family_source(Family::church, sz));
    EXPECT_GT(ratio(run(p, Engine::simple)), ratio(run(p, Engine::light)));
  }
}

TEST(NameRatios, ArithmeticWithinFactorTwo) {
  for (Family f : {Family::add, Family::fib}) {
    for (const auto& sz : default_sizes(f)) {
      const SourceProgram p = parse_source(family_source(f, sz));
      const double s = ratio(run(p, Engine::simple));
      const double l = ratio(run(p, Engine::light));
      EXPECT_LE(std::max(s, l), 2.0 * std::min(s, l)) << family_label(f, sz);
    }
  }
}

}  // namespace
}  // namespace inet
