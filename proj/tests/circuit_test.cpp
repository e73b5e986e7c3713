#include <gtest/gtest.h>

#include <random>

#include "q2r/circuit.hpp"
#include "q2r/io.hpp"

using namespace q2r;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kTwoLayer =
    "input 1\n"
    "input 2\n"
    "input 3\n"
    "gate 4 and 1 2\n"
    "gate 5 and 2 3\n"
    "gate 6 or 4 5\n"
    "output 6\n";

// OR, AND, OR layers with every internal fanout exactly two.
const char* kThreeLayer =
    "input 1\ninput 2\n"
    "gate 3 or 1 2\ngate 4 or 1 2\n"
    "gate 5 and 3 4\ngate 6 and 3 4\n"
    "gate 7 or 5 6\ngate 8 or 5 6\n"
    "output 7\noutput 8\n";

}  // namespace

TEST(CircuitParse, ReadsNetlist) {
  auto c = parse_circuit(kTwoLayer);
  EXPECT_EQ(c.gates().size(), 6u);
  EXPECT_EQ(c.inputs(), (std::vector<GateId>{1, 2, 3}));
  EXPECT_EQ(c.depth(), 2);
  EXPECT_EQ(c.layer(5), 1);
  EXPECT_EQ(c.layer(6), 2);
  EXPECT_EQ(c.fanout(2), 2u);
  EXPECT_EQ(c.gate(6).kind, GateKind::Or);
  EXPECT_TRUE(c.is_output(6));
  EXPECT_EQ(c.consumers(2), (std::vector<GateId>{4, 5}));
  EXPECT_EQ(parse_circuit(circuit_to_text(c)).gates().size(), 6u);
  EXPECT_EQ(circuit_to_text(parse_circuit(circuit_to_text(c))), circuit_to_text(c));
}

TEST(CircuitParse, ForwardReferencesAreFine) {
  auto c = parse_circuit("gate 3 or 1 2\ninput 1\ninput 2\noutput 3\n");
  EXPECT_EQ(c.gates().back().id, 3u);
}

TEST(CircuitParse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("input 1\nwire 2\n"), 2u);
  EXPECT_EQ(error_line("input x\n"), 1u);
  EXPECT_EQ(error_line("input 1\ninput 1\n"), 2u);
  EXPECT_EQ(error_line("input 1\n\ngate 2 and 1 9\n"), 3u);
  EXPECT_EQ(error_line("input 1\ngate 2 xor 1 1\n"), 2u);
  EXPECT_EQ(error_line("input 1\noutput 4\n"), 2u);
  EXPECT_NE(error_line("input 1\ngate 2 and 1 3\ngate 3 and 1 2\n"), 0u);
}

TEST(CircuitParse, Assignments) {
  auto a = parse_assignment("assign 1=1 2=0\nassign 3=1\n");
  EXPECT_EQ(a, (Assignment{{1, true}, {2, false}, {3, true}}));
  EXPECT_EQ(parse_assignment(assignment_to_text(a)), a);
  EXPECT_THROW(parse_assignment("set 1=1\n"), ParseError);
  EXPECT_THROW(parse_assignment("assign 1=2\n"), ParseError);
}

TEST(CircuitConstruct, RejectsBadStructure) {
  using G = std::vector<Gate>;
  EXPECT_THROW(Circuit(G{{1, GateKind::Input, {}}, {1, GateKind::Input, {}}}, {}), std::invalid_argument);
  EXPECT_THROW(Circuit(G{{2, GateKind::And, {1, 1}}}, {}), std::invalid_argument);
  EXPECT_THROW(Circuit(G{{1, GateKind::Input, {}}}, {5}), std::invalid_argument);
  EXPECT_THROW(Circuit(G{{2, GateKind::Or, {3, 3}}, {3, GateKind::Or, {2, 2}}}, {}), std::invalid_argument);
}

TEST(As2m, AcceptsThreeLayerCircuit) {
  auto r = validate_as2m(parse_circuit(kThreeLayer));
  EXPECT_TRUE(r.ok()) << r.summary();
  // AND directly on inputs.
  auto bad = validate_as2m(parse_circuit(kTwoLayer));
  EXPECT_TRUE(bad.has(As2mRule::InputToOr));
  EXPECT_TRUE(bad.has(As2mRule::Alternation));
}

TEST(As2m, FlagsEachRule) {
  // Depth-one OR with an input reused.
  auto fan = parse_circuit(
      "input 1\ninput 2\ninput 3\n"
      "gate 4 or 1 2\ngate 5 or 1 3\ngate 6 or 1 2\n"
      "output 4\noutput 5\noutput 6\n");
  auto r = validate_as2m(fan);
  EXPECT_TRUE(r.has(As2mRule::Fanout));
  EXPECT_FALSE(validate_as2m(fan, false).ok());

  auto relaxed = parse_circuit("input 1\ninput 2\ngate 3 or 1 2\noutput 3\n");
  EXPECT_TRUE(validate_as2m(relaxed).has(As2mRule::Fanout));
  EXPECT_TRUE(validate_as2m(relaxed, false).ok());

  // Input feeding a layer-two gate skips a layer.
  auto skip = parse_circuit("input 1\ninput 2\ngate 3 and 1 2\ngate 4 or 3 2\noutput 4\n");
  EXPECT_TRUE(validate_as2m(skip).has(As2mRule::Synchrony));

  // OR on an even layer.
  auto twin = parse_circuit("input 1\ninput 2\ngate 3 or 1 2\ngate 4 or 1 2\ngate 5 or 3 4\noutput 5\n");
  EXPECT_TRUE(validate_as2m(twin).has(As2mRule::Alternation));

  // AND on top.
  auto top = parse_circuit("input 1\ninput 2\ngate 3 or 1 2\ngate 4 or 1 2\ngate 5 and 3 4\noutput 5\n");
  EXPECT_TRUE(validate_as2m(top).has(As2mRule::Outputs));

  auto same = parse_circuit("input 1\ngate 2 or 1 1\noutput 2\n");
  EXPECT_TRUE(validate_as2m(same).has(As2mRule::Fanin));

  auto hidden = parse_circuit(kThreeLayer + std::string("output 3\n"));
  EXPECT_TRUE(validate_as2m(hidden).has(As2mRule::Outputs));
  EXPECT_FALSE(validate_as2m(hidden).summary().empty());
}

TEST(Evaluate, SmallGates) {
  auto c = parse_circuit("input 1\ninput 2\ngate 3 or 1 2\ngate 4 and 1 2\noutput 3\noutput 4\n");
  auto v = evaluate_circuit(c, {{1, true}, {2, false}});
  EXPECT_TRUE(v.at(3));
  EXPECT_FALSE(v.at(4));
  v = evaluate_circuit(c, {{1, true}, {2, true}});
  EXPECT_TRUE(v.at(4));
  EXPECT_THROW(evaluate_circuit(c, {{1, true}}), std::invalid_argument);
  EXPECT_THROW(evaluate_circuit(c, {{1, true}, {2, true}, {3, true}}), std::invalid_argument);
}

TEST(Evaluate, TwoLayerTruthTable) {
  auto c = parse_circuit(kTwoLayer);
  for (int m = 0; m < 8; ++m) {
    bool a = m & 1, b = m & 2, d = m & 4;
    auto v = evaluate_circuit(c, {{1, a}, {2, b}, {3, d}});
    EXPECT_EQ(v.at(6), (a && b) || (b && d)) << m;
  }
}

TEST(RandomCircuits, AreAs2mWithRequestedShape) {
  std::mt19937_64 rng(71);
  for (std::size_t depth : {1, 3, 5}) {
    for (std::size_t width = 2; width <= 8; ++width) {
      auto c = random_as2m_circuit(width, depth, rng);
      auto r = validate_as2m(c);
      ASSERT_TRUE(r.ok()) << r.summary();
      EXPECT_EQ(c.depth(), static_cast<int>(depth));
      EXPECT_EQ(c.inputs().size(), width);
      EXPECT_EQ(c.outputs().size(), width);
      EXPECT_EQ(c.gates().size(), width * (depth + 1));
      auto a = random_assignment(c, rng);
      EXPECT_EQ(a.size(), width);
      EXPECT_EQ(evaluate_circuit(c, a).size(), c.gates().size());
    }
  }
  EXPECT_THROW(random_as2m_circuit(1, 1, rng), std::invalid_argument);
  EXPECT_THROW(random_as2m_circuit(4, 2, rng), std::invalid_argument);
}
