#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "q2r/compiler.hpp"
#include "q2r/io.hpp"
#include "q2r/pred.hpp"
#include "q2r/topology.hpp"

using namespace q2r;

TEST(Pred, ZeroStepsIsAlwaysNo) {
  auto ring = build_ring(3);
  for (NodeId v = 0; v < 6; ++v) EXPECT_FALSE(answer_pred({ring.network, ring.canonical, 0, v}));
}

TEST(Pred, RingOneStep) {
  // 100000 -> 110001 after one (A)(B) step.
  auto ring = build_ring(3);
  EXPECT_EQ(step(ring.network, UpdateSchedule::two_block(ring.network), ring.canonical).to_string(), "110001");
  EXPECT_TRUE(answer_pred({ring.network, ring.canonical, 1, 1}));
  EXPECT_FALSE(answer_pred({ring.network, ring.canonical, 1, 2}));
  EXPECT_TRUE(answer_pred({ring.network, ring.canonical, 1, 5}));
  // Node 1 holds +1 throughout, so it never differs from its start.
  EXPECT_FALSE(answer_pred({ring.network, ring.canonical, 1, 0}));
  EXPECT_THROW(answer_pred({ring.network, ring.canonical, 1, 6}), std::invalid_argument);
}

TEST(Pred, CompiledOrInstances) {
  auto c = parse_circuit("input 1\ninput 2\ngate 3 or 1 2\noutput 3\n");
  for (int m = 0; m < 4; ++m) {
    Assignment a{{1, (m & 1) != 0}, {2, (m & 2) != 0}};
    auto inst = to_pred_instance(compile_circuit(c, a), 3);
    EXPECT_EQ(inst.x.spin(inst.v), -1);
    EXPECT_EQ(answer_pred(inst), m != 0) << m;
  }
  EXPECT_THROW(to_pred_instance(compile_circuit(c), 1), std::invalid_argument);
}

TEST(Pred, DocumentRoundTrip) {
  std::mt19937_64 rng(97);
  auto c = random_as2m_circuit(3, 3, rng);
  auto a = random_assignment(c, rng);
  auto inst = to_pred_instance(compile_circuit(c, a), c.outputs().front());
  std::ostringstream os;
  write_pred_instance(os, inst);
  auto back = pred_from_document(parse_document(os.str()));
  EXPECT_EQ(back.network, inst.network);
  EXPECT_EQ(back.x, inst.x);
  EXPECT_EQ(back.t, inst.t);
  EXPECT_EQ(back.v, inst.v);
  EXPECT_EQ(answer_pred(back), evaluate_circuit(c, a).at(c.outputs().front()));
}

TEST(Pred, DocumentNeedsConfigAndQuery) {
  auto ring = build_ring(3);
  std::string net = network_to_text(ring.network);
  EXPECT_THROW(pred_from_document(parse_document(net + "pred t=1 v=1\n")), ParseError);
  EXPECT_THROW(pred_from_document(parse_document(net + "100000\n")), ParseError);
}
