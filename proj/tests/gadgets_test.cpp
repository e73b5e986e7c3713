#include <gtest/gtest.h>

#include "oracle.hpp"
#include "q2r/dynamics.hpp"
#include "q2r/gadgets.hpp"
#include "support.hpp"

using namespace q2r;

namespace {

// Readouts at the latency from the naive oracle, inputs clamped by giving
// them a label no block uses.
std::vector<bool> oracle_readout(const GadgetSpec& spec, const std::vector<bool>& in) {
  auto adj = test_support::oracle_adjacency(spec.fragment);
  auto labels = test_support::oracle_labels(spec.fragment);
  auto x = test_support::to_spins(spec.initial);
  for (std::size_t i = 0; i < in.size(); ++i) {
    labels[spec.inputs[i]] = 2;
    x[spec.inputs[i]] = in[i] ? 1 : -1;
  }
  for (std::uint64_t t = 0; t < spec.latency; ++t) x = oracle::step(adj, x, labels);
  std::vector<bool> out;
  for (NodeId v : spec.outputs) out.push_back(x[v] > 0);
  return out;
}

}  // namespace

TEST(Gadgets, AllCertify) {
  auto gadgets = all_gadgets();
  ASSERT_EQ(gadgets.size(), 6u);
  for (const auto& g : gadgets) {
    auto r = certify_gadget(g);
    EXPECT_TRUE(r.ok()) << to_string(g.kind) << ": " << r.summary();
    EXPECT_EQ(r.cases, std::size_t{1} << g.inputs.size());
  }
}

TEST(Gadgets, OracleAgreesWithTruthTables) {
  for (const auto& g : all_gadgets()) {
    const std::size_t k = g.inputs.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<bool> in(k);
      for (std::size_t i = 0; i < k; ++i) in[i] = (mask >> i) & 1U;
      EXPECT_EQ(oracle_readout(g, in), g.truth(in)) << to_string(g.kind) << " mask=" << mask;
    }
  }
}

TEST(Gadgets, TruthTables) {
  // AND and OR carry two copies of their result for fanout.
  EXPECT_EQ(and_gadget().truth({true, false}), (std::vector<bool>{false, false}));
  EXPECT_EQ(and_gadget().truth({true, true}), (std::vector<bool>{true, true}));
  EXPECT_EQ(or_gadget().truth({false, true}), (std::vector<bool>{true, true}));
  EXPECT_EQ(or_gadget().truth({false, false}), (std::vector<bool>{false, false}));
  EXPECT_EQ(xor_gadget().truth({true, true})[0], false);
  EXPECT_EQ(not_gadget().truth({false}), std::vector<bool>{true});
  EXPECT_EQ(crossover_gadget().truth({true, false}), (std::vector<bool>{false, true}));
}

TEST(Gadgets, SizesAndLatencies) {
  struct Want {
    GadgetSpec spec;
    std::size_t nodes;
    std::uint64_t latency;
  };
  std::vector<Want> want{{wire_gadget(2), 7, 2},    {and_gadget(), 13, 3}, {xor_gadget(), 22, 3},
                         {not_gadget(), 16, 3},     {or_gadget(), 73, 5},  {crossover_gadget(), 65, 4}};
  for (const auto& w : want) {
    EXPECT_EQ(w.spec.fragment.size(), w.nodes) << to_string(w.spec.kind);
    EXPECT_EQ(w.spec.latency, w.latency) << to_string(w.spec.kind);
    EXPECT_TRUE(w.spec.fragment.has_bipartition());
  }
}

TEST(Gadgets, TamperedLatencyFails) {
  auto g = and_gadget();
  g.latency += 1;
  EXPECT_FALSE(certify_gadget(g).ok());
  auto n = not_gadget();
  n.latency -= 1;
  EXPECT_FALSE(certify_gadget(n).ok());
}

TEST(Wire, TwoCellOrbit) {
  auto w = wire_gadget(2);
  EXPECT_EQ(w.fragment.size(), 7u);
  auto orbit = wire_orbit(2);
  EXPECT_EQ(orbit.steps, 4u);
  EXPECT_EQ(orbit.block_updates, 8u);
}

TEST(Wire, OrbitMatchesPeriodFinder) {
  for (std::size_t cells : {1, 2, 3, 5}) {
    auto w = wire_gadget(cells);
    auto x = w.initial;
    x.set(w.inputs[0], 1);
    auto r = find_period(w.fragment, UpdateSchedule::two_block(w.fragment), x);
    EXPECT_EQ(wire_orbit(cells).steps, r.period) << cells;
    EXPECT_EQ(r.preperiod, 0u);
  }
}

TEST(Wire, AllLowIsFixed) {
  auto w = wire_gadget(1);
  Configuration low(w.fragment.size(), -1);
  EXPECT_EQ(w.initial, low);
  EXPECT_EQ(step(w.fragment, UpdateSchedule::two_block(w.fragment), low), low);
}

TEST(Builder, RejectsBadEdges) {
  NetworkBuilder b;
  NodeId a = b.add_node(Side::A), c = b.add_node(Side::A), d = b.add_node(Side::B);
  EXPECT_THROW(b.add_edge(a, c), std::logic_error);
  EXPECT_THROW(b.add_edge(a, a), std::logic_error);
  b.add_edge(a, d);
  EXPECT_THROW(b.add_edge(d, a), std::logic_error);
  EXPECT_EQ(b.degree(a), 1u);
}

TEST(Builder, StrandsAlternateSides) {
  NetworkBuilder b;
  NodeId s = b.add_node(Side::B);
  auto strand = b.add_strand(s, 3);
  ASSERT_EQ(strand.size(), 3u);
  EXPECT_EQ(b.size(), 4u);
  EXPECT_EQ(b.side(strand[0]), Side::A);
  EXPECT_EQ(b.side(strand[2]), Side::A);
  auto [p, q] = b.add_constant_pair(Side::A);
  EXPECT_EQ(b.degree(p), 3u);
  EXPECT_EQ(b.degree(q), 3u);
  auto net = b.build();
  EXPECT_TRUE(net.has_bipartition());
  EXPECT_TRUE(two_colorable(net));
}
