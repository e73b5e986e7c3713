#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "q2r/compiler.hpp"
#include "support.hpp"

using namespace q2r;

namespace {

// Readouts from the naive oracle rather than the library stepper.
std::map<GateId, bool> oracle_readouts(const CompiledCircuit& cc, const Configuration& x0) {
  auto adj = test_support::oracle_adjacency(cc.network);
  auto labels = test_support::oracle_labels(cc.network);
  auto x = test_support::to_spins(x0);
  std::map<GateId, bool> out;
  for (std::uint64_t t = 0; t <= cc.horizon; ++t) {
    for (const auto& [gate, r] : cc.readouts) {
      if (r.time == t) out[gate] = x[r.node] > 0;
    }
    x = oracle::step(adj, x, labels);
  }
  return out;
}

const char* kOr = "input 1\ninput 2\ngate 3 or 1 2\noutput 3\n";

}  // namespace

TEST(Compiler, SingleOrTruthTable) {
  auto c = parse_circuit(kOr);
  auto cc = compile_circuit(c);
  EXPECT_TRUE(validate_network(cc.network).ok());
  for (int m = 0; m < 4; ++m) {
    Assignment a{{1, (m & 1) != 0}, {2, (m & 2) != 0}};
    auto got = simulate_readouts(cc, apply_assignment(cc, a));
    EXPECT_EQ(got.at(3), m != 0) << m;
    EXPECT_EQ(oracle_readouts(cc, apply_assignment(cc, a)).at(3), m != 0) << m;
  }
}

TEST(Compiler, RandomCircuitsMatchEvaluation) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t depth = 1 + 2 * (trial % 3);
    std::size_t width = 2 + rng() % 5;
    auto c = random_as2m_circuit(width, depth, rng);
    auto cc = compile_circuit(c);
    ASSERT_TRUE(validate_network(cc.network).ok());
    for (int rep = 0; rep < 2; ++rep) {
      auto a = random_assignment(c, rng);
      auto want = evaluate_circuit(c, a);
      auto x0 = apply_assignment(cc, a);
      auto got = simulate_readouts(cc, x0);
      for (const auto& [gate, value] : got) ASSERT_EQ(value, want.at(gate)) << "gate " << gate;
      if (trial % 10 == 0) EXPECT_EQ(oracle_readouts(cc, x0), got);
    }
  }
}

TEST(Compiler, AllFalseInputsReadFalseEverywhere) {
  std::mt19937_64 rng(79);
  for (std::size_t depth : {1, 3, 5}) {
    auto c = random_as2m_circuit(4, depth, rng);
    auto cc = compile_circuit(c);
    Assignment zero;
    for (GateId in : c.inputs()) zero[in] = false;
    EXPECT_EQ(cc.initial, apply_assignment(cc, zero));
    for (const auto& [gate, value] : simulate_readouts(cc, cc.initial)) {
      if (c.gate(gate).kind != GateKind::Input) EXPECT_FALSE(value) << gate;
    }
  }
}

TEST(Compiler, RaisingAnInputNeverLowersAnOutput) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_as2m_circuit(3 + trial % 3, 3, rng);
    auto cc = compile_circuit(c);
    auto a = random_assignment(c, rng);
    auto before = simulate_readouts(cc, apply_assignment(cc, a));
    for (auto& [in, v] : a) v = true;
    auto after = simulate_readouts(cc, apply_assignment(cc, a));
    for (GateId o : c.outputs()) EXPECT_TRUE(!before.at(o) || after.at(o));
  }
}

TEST(Compiler, SizeIsLinear) {
  std::mt19937_64 rng(89);
  for (std::size_t depth : {1, 3, 5}) {
    for (std::size_t width = 2; width <= 10; ++width) {
      auto c = random_as2m_circuit(width, depth, rng);
      auto cc = compile_circuit(c);
      const std::size_t gates = c.gates().size();
      EXPECT_EQ(cc.network.size(), cc.stats.gadget_nodes + cc.stats.padding_nodes);
      EXPECT_LE(cc.stats.gadget_nodes, 17 * gates);
      EXPECT_LE(cc.stats.padding_nodes, 7 * gates * cc.horizon);
    }
  }
}

TEST(Compiler, RejectsNonAs2m) {
  auto c = parse_circuit("input 1\ninput 2\ngate 3 and 1 2\noutput 3\n");
  EXPECT_THROW(compile_circuit(c), CompileError);
  auto fan = parse_circuit("input 1\ninput 2\ngate 3 or 1 2\ngate 4 or 1 2\ngate 5 or 1 2\noutput 3\noutput 4\noutput 5\n");
  EXPECT_THROW(compile_circuit(fan), CompileError);
}

TEST(Compiler, AssignmentErrors) {
  auto cc = compile_circuit(parse_circuit(kOr));
  EXPECT_THROW(apply_assignment(cc, {{1, true}}), std::invalid_argument);
  EXPECT_THROW(apply_assignment(cc, {{1, true}, {2, true}, {3, true}}), std::invalid_argument);
}
