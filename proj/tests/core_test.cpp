#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "q2r/core.hpp"
#include "q2r/topology.hpp"
#include "support.hpp"

using namespace q2r;

namespace {

Q2RNetwork cycle4() {
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return Q2RNetwork::from_edges(4, e, std::vector<Side>{Side::A, Side::B, Side::A, Side::B});
}

// Center node 0 with neighbors 1..k; leaves are joined so that the network
// is well formed enough for local_next.
Q2RNetwork star(std::size_t k) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= k; ++i) e.emplace_back(0, i);
  return Q2RNetwork::from_edges(k + 1, e);
}

}  // namespace

TEST(Configuration, TextRoundTrip) {
  auto x = Configuration::from_string("1000110");
  EXPECT_EQ(x.size(), 7u);
  EXPECT_EQ(x.spin(0), 1);
  EXPECT_EQ(x.spin(1), -1);
  EXPECT_EQ(x.to_string(), "1000110");
  EXPECT_EQ(x.count_up(), 3u);
  EXPECT_EQ(x.negated().to_string(), "0111001");
  EXPECT_THROW(Configuration::from_string("10x"), std::invalid_argument);
}

TEST(Configuration, IndexEncodingAndTailBits) {
  auto x = Configuration::from_index(5, 0b10011);
  EXPECT_EQ(x.to_string(), "11001");
  EXPECT_EQ(x.to_index(), 0b10011u);
  // Negation must not leak into unused bits, or equality would break.
  EXPECT_EQ(x.negated().negated(), x);
  Configuration big(130, 1);
  EXPECT_EQ(big.count_up(), 130u);
  EXPECT_EQ(big.negated(), Configuration(130, -1));
}

TEST(Configuration, BoundsChecks) {
  Configuration x(3);
  EXPECT_THROW(x.at(3), std::out_of_range);
  EXPECT_THROW(x.set(0, 0), std::invalid_argument);
}

TEST(Validation, FourCycleIsValid) { EXPECT_TRUE(validate_network(cycle4()).ok()); }

TEST(Validation, TriangleIsNotBipartite) {
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 0}};
  auto report = validate_network(Q2RNetwork::from_edges(3, e));
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.has(ViolationKind::NotBipartite));
  EXPECT_FALSE(report.has(ViolationKind::OddDegree));

  ValidationOptions waive;
  waive.require_bipartite = false;
  EXPECT_TRUE(validate_network(Q2RNetwork::from_edges(3, e), waive).ok());
}

TEST(Validation, PathHasOddEndpoints) {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  auto report = validate_network(Q2RNetwork::from_edges(3, e));
  EXPECT_TRUE(report.has(ViolationKind::OddDegree));
  EXPECT_EQ(report.violations.size(), 2u);
}

TEST(Validation, StructuralDefects) {
  auto loops = Q2RNetwork::from_adjacency({{0, 1}, {0}});
  auto r1 = validate_network(loops);
  EXPECT_TRUE(r1.has(ViolationKind::SelfLoop));

  auto asym = Q2RNetwork::from_adjacency({{1, 2}, {0}, {}});
  EXPECT_TRUE(validate_network(asym).has(ViolationKind::AsymmetricEdge));

  auto dup = Q2RNetwork::from_adjacency({{1, 1}, {0, 0}});
  EXPECT_TRUE(validate_network(dup).has(ViolationKind::DuplicateEdge));

  auto same_side = cycle4().with_bipartition({Side::A, Side::A, Side::B, Side::B});
  EXPECT_TRUE(validate_network(same_side).has(ViolationKind::NonCrossingEdge));

  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  auto isolated = Q2RNetwork::from_edges(5, e);
  EXPECT_TRUE(validate_network(isolated).has(ViolationKind::IsolatedNode));
  ValidationOptions allow;
  allow.allow_isolated = true;
  EXPECT_TRUE(validate_network(isolated, allow).ok());
  EXPECT_FALSE(is_connected(isolated));
}

TEST(Validation, ViolationsUseOneBasedIds) {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  auto report = validate_network(Q2RNetwork::from_edges(3, e));
  EXPECT_EQ(report.violations.front().describe(), "node 1 has odd degree");
}

TEST(LocalRule, TieFlipExamples) {
  auto net = star(4);
  EXPECT_EQ(local_next(net, Configuration::from_string("11100"), 0), -1);
  EXPECT_EQ(local_next(net, Configuration::from_string("11110"), 0), 1);
  auto two = star(2);
  // Rule 150 on a degree-2 node: x' = x xor left xor right.
  EXPECT_EQ(local_next(two, Configuration::from_string("010"), 0), 1);
  EXPECT_THROW(local_next(two, Configuration::from_string("010"), 3), std::out_of_range);
}

TEST(LocalRule, NeighborOrderDoesNotMatter) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<NodeId>> adj(7);
    for (NodeId i = 1; i < 7; ++i) adj[0].push_back(i);
    auto x = random_configuration(7, rng);
    auto a = Q2RNetwork::from_adjacency(adj);
    std::shuffle(adj[0].begin(), adj[0].end(), rng);
    auto b = Q2RNetwork::from_adjacency(adj);
    EXPECT_EQ(local_next(a, x, 0), local_next(b, x, 0));
  }
}

TEST(HalfStep, EmptyBlockIsIdentity) {
  auto x = Configuration::from_string("1011");
  EXPECT_EQ(half_step(cycle4(), x, {}), x);
}

TEST(HalfStep, HandCheckedRing) {
  auto ring = build_ring(2);
  auto x = Configuration::from_string("1000");
  std::vector<NodeId> odd{0, 2};
  EXPECT_EQ(half_step(ring.network, x, odd), x);
}

TEST(HalfStep, ClassUpdateIsInvolutionExhaustive) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    auto net = random_bipartite_even(12, rng);
    for (Side s : {Side::A, Side::B}) {
      auto block = net.nodes_on(s);
      for (std::uint64_t k = 0; k < (1u << 12); ++k) {
        auto x = Configuration::from_index(12, k);
        ASSERT_EQ(half_step(net, half_step(net, x, block), block), x);
      }
    }
  }
}

TEST(Step, RingTwoCycle) {
  auto ring = build_ring(2);
  auto sched = UpdateSchedule::two_block(ring.network);
  EXPECT_EQ(step(ring.network, sched, Configuration::from_string("1000")).to_string(), "1101");
  EXPECT_EQ(inverse_step(ring.network, sched, Configuration::from_string("1101")).to_string(), "1000");
}

TEST(Step, AllDownAndAllUpAreFixed) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto net = random_bipartite_even(4 + 2 * (rng() % 20), rng);
    for (auto sched : {UpdateSchedule::two_block(net), UpdateSchedule::parallel(net.size())}) {
      Configuration down(net.size(), -1), up(net.size(), 1);
      EXPECT_EQ(step(net, sched, down), down);
      EXPECT_EQ(step(net, sched, up), up);
    }
  }
}

TEST(Step, MatchesNaiveOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto net = random_bipartite_even(4 + 2 * (rng() % 30), rng);
    auto adj = test_support::oracle_adjacency(net);
    auto labels = test_support::oracle_labels(net);
    auto x = random_configuration(net.size(), rng);
    auto sched = UpdateSchedule::two_block(net);
    auto got = step(net, sched, x);
    auto want = oracle::step(adj, test_support::to_spins(x), labels);
    ASSERT_EQ(got.to_string(), oracle::to_bits(want));

    auto par = step(net, UpdateSchedule::parallel(net.size()), x);
    std::vector<int> one(net.size(), 0);
    ASSERT_EQ(par.to_string(), oracle::to_bits(oracle::step(adj, test_support::to_spins(x), one, 1)));
  }
}

TEST(Step, InverseRoundTripRandom) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    auto net = random_bipartite_even(4 + 2 * (rng() % 30), rng);
    auto sched = UpdateSchedule::two_block(net);
    auto x = random_configuration(net.size(), rng);
    ASSERT_EQ(inverse_step(net, sched, step(net, sched, x)), x);
    ASSERT_EQ(step(net, sched, inverse_step(net, sched, x)), x);
  }
}

TEST(Step, NegationSymmetry) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    auto net = random_bipartite_even(4 + 2 * (rng() % 30), rng);
    auto x = random_configuration(net.size(), rng);
    for (auto sched : {UpdateSchedule::two_block(net), UpdateSchedule::parallel(net.size())}) {
      ASSERT_EQ(step(net, sched, x.negated()), step(net, sched, x).negated());
    }
  }
}

TEST(Schedule, Checks) {
  auto net = cycle4();
  EXPECT_NO_THROW(check_schedule(net, UpdateSchedule::two_block(net)));
  EXPECT_THROW(check_schedule(net, UpdateSchedule::from_blocks({{0, 1}, {1, 2, 3}})), ScheduleError);
  EXPECT_THROW(check_schedule(net, UpdateSchedule::from_blocks({{0, 1}})), ScheduleError);
  auto bare = net.without_bipartition();
  EXPECT_THROW(UpdateSchedule::two_block(bare), ScheduleError);
  EXPECT_THROW(check_schedule(bare, UpdateSchedule::from_blocks({{0, 2}, {1, 3}})), ScheduleError);
  EXPECT_EQ(default_schedule(bare).block_count(), 1u);
  EXPECT_TRUE(is_reversible(net, UpdateSchedule::two_block(net)));
  EXPECT_FALSE(is_reversible(net, UpdateSchedule::parallel(4)));
  EXPECT_THROW(inverse_step(net, UpdateSchedule::parallel(4), Configuration(4)), ScheduleError);
}

TEST(Energy, HandValues) {
  auto ring = build_ring(2);
  EXPECT_EQ(energy(ring.network, Configuration::from_string("1000")).value, 0);
  EXPECT_EQ(energy(ring.network, Configuration(4, 1)).value, -4);
  auto torus = build_torus(4, 4);
  EXPECT_EQ(energy(torus.network, Configuration(16, 1)).value, -32);
}

TEST(Energy, ConservedByEveryClassHalfStep) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto net = random_bipartite_even(4 + 2 * (rng() % 30), rng);
    auto adj = test_support::oracle_adjacency(net);
    auto x = random_configuration(net.size(), rng);
    for (Side s : {Side::A, Side::B}) {
      auto y = half_step(net, x, net.nodes_on(s));
      ASSERT_EQ(energy(net, y), energy(net, x));
      ASSERT_EQ(energy(net, y).value, oracle::energy(adj, test_support::to_spins(y)));
      x = y;
    }
  }
}

TEST(Stepper, AgreesWithFreeFunctions) {
  std::mt19937_64 rng(37);
  auto net = random_bipartite_even(40, rng);
  auto sched = UpdateSchedule::two_block(net);
  Stepper stepper(net, sched);
  auto x = random_configuration(40, rng);
  auto y = x;
  for (int t = 0; t < 50; ++t) {
    stepper.step(y);
    x = step(net, sched, x);
    ASSERT_EQ(x, y);
  }
  for (int t = 0; t < 50; ++t) stepper.inverse(y);
  EXPECT_NE(y, x);
  for (int t = 0; t < 50; ++t) x = inverse_step(net, sched, x);
  EXPECT_EQ(x, y);
}
