#include "q2r/gadgets.hpp"

#include <algorithm>
#include <stdexcept>

#include "q2r/dynamics.hpp"

namespace q2r {

NodeId NetworkBuilder::add_node(Side side, int spin) {
  sides_.push_back(side);
  spins_.push_back(spin);
  adjacency_.emplace_back();
  return static_cast<NodeId>(sides_.size() - 1);
}

void NetworkBuilder::add_edge(NodeId a, NodeId b) {
  if (a >= size() || b >= size()) throw std::logic_error("edge endpoint out of range");
  if (a == b) throw std::logic_error("self-loop in fragment");
  if (sides_[a] == sides_[b]) {
    throw std::logic_error("edge " + std::to_string(a + 1) + "-" + std::to_string(b + 1) +
                           " joins nodes of the same side");
  }
  auto& na = adjacency_[a];
  if (std::find(na.begin(), na.end(), b) != na.end()) throw std::logic_error("repeated edge in fragment");
  na.push_back(b);
  adjacency_[b].push_back(a);
}

std::vector<NodeId> NetworkBuilder::add_strand(NodeId from, std::size_t length) {
  std::vector<NodeId> nodes;
  nodes.reserve(length);
  NodeId prev = from;
  for (std::size_t i = 0; i < length; ++i) {
    NodeId v = add_node(other(sides_[prev]));
    add_edge(prev, v);
    nodes.push_back(v);
    prev = v;
  }
  return nodes;
}

std::pair<NodeId, NodeId> NetworkBuilder::add_constant_pair(Side side) {
  NodeId c1 = add_node(side, 1);
  NodeId c2 = add_node(side, 1);
  for (int i = 0; i < 3; ++i) {
    NodeId q = add_node(other(side), 1);
    add_edge(c1, q);
    add_edge(c2, q);
  }
  return {c1, c2};
}

Q2RNetwork NetworkBuilder::build() const { return Q2RNetwork::from_adjacency(adjacency_, sides_); }

Configuration NetworkBuilder::initial() const {
  Configuration x(size());
  for (NodeId v = 0; v < size(); ++v) x.set(v, spins_[v]);
  return x;
}

namespace {

void require_side(const NetworkBuilder& b, NodeId v, Side s, const char* what) {
  if (b.side(v) != s) throw std::logic_error(std::string(what) + " must end on side " + (s == Side::A ? "A" : "B"));
}

}  // namespace

CoreHandle add_and_core(NetworkBuilder& b, NodeId x, NodeId y) {
  require_side(b, x, Side::A, "AND operand");
  require_side(b, y, Side::A, "AND operand");
  CoreHandle h;
  h.tie = b.add_node(Side::B);
  b.add_edge(x, h.tie);
  b.add_edge(y, h.tie);
  for (int i = 0; i < 2; ++i) {
    NodeId o = b.add_node(Side::A);
    b.add_edge(h.tie, o);
    h.heads.push_back(o);
  }
  return h;
}

CoreHandle add_xor_core(NetworkBuilder& b, std::span<const NodeId> x_arms, std::span<const NodeId> y_arms,
                        std::size_t outputs) {
  if (x_arms.size() != y_arms.size() || x_arms.empty()) {
    throw std::logic_error("XOR needs the same positive number of arms per operand");
  }
  if (outputs == 0 || outputs % 2 != 0) throw std::logic_error("XOR output count must be even");
  CoreHandle h;
  h.tie = b.add_node(Side::B);
  for (auto arms : {x_arms, y_arms}) {
    for (NodeId a : arms) {
      require_side(b, a, Side::A, "XOR arm");
      b.add_edge(a, h.tie);
    }
  }
  // Each output holds -1 until the tie flips; a matching +1 constant keeps
  // the sum at zero exactly when the arms split evenly.
  for (std::size_t i = 0; i < outputs / 2; ++i) {
    auto [c1, c2] = b.add_constant_pair(Side::A);
    b.add_edge(c1, h.tie);
    b.add_edge(c2, h.tie);
  }
  for (std::size_t i = 0; i < outputs; ++i) {
    NodeId o = b.add_node(Side::A);
    b.add_edge(h.tie, o);
    h.heads.push_back(o);
  }
  return h;
}

CoreHandle add_not_core(NetworkBuilder& b, NodeId x, std::uint64_t h_tie) {
  require_side(b, x, Side::A, "NOT operand");
  if (h_tie < 3 || h_tie % 2 == 0) throw std::logic_error("NOT tie vertex needs an odd half-step >= 3");
  CoreHandle h;
  h.tie = b.add_node(Side::B);
  b.add_edge(x, h.tie);
  // Constants on side A start the clock heads (side B) at half-step 1, so a
  // strand of h_tie - 1 nodes delivers +1 at h_tie - 1, alongside x.
  auto [c1, c2] = b.add_constant_pair(Side::A);
  for (NodeId c : {c1, c2}) {
    auto clock = b.add_strand(c, h_tie - 1);
    b.add_edge(clock.back(), h.tie);
  }
  NodeId o = b.add_node(Side::A);
  b.add_edge(h.tie, o);
  h.heads.push_back(o);
  return h;
}

const char* to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Wire: return "WIRE";
    case GadgetKind::And: return "AND";
    case GadgetKind::Xor: return "XOR";
    case GadgetKind::Not: return "NOT";
    case GadgetKind::Or: return "OR";
    case GadgetKind::Crossover: return "CROSSOVER";
  }
  return "?";
}

namespace {

constexpr std::size_t kTail = 2;
// False outputs of the single-tie gadgets stay low for good; checked this far.
constexpr std::uint64_t kLongHorizon = 64;

void finish(GadgetSpec& spec, NetworkBuilder& b, std::span<const NodeId> heads, std::uint64_t horizon) {
  for (NodeId h : heads) spec.stubs.push_back(b.add_strand(h, kTail).back());
  spec.fragment = b.build();
  spec.initial = b.initial();
  spec.horizon = horizon;
}

}  // namespace

GadgetSpec wire_gadget(std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("wire needs at least one cell");
  GadgetSpec spec;
  spec.kind = GadgetKind::Wire;
  NetworkBuilder b;
  NodeId junction = b.add_node(Side::B);
  spec.inputs = {junction};
  NodeId readout = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    NodeId s1 = b.add_node(Side::A);
    NodeId s2 = b.add_node(Side::A);
    NodeId next = b.add_node(Side::B);
    for (NodeId s : {s1, s2}) {
      b.add_edge(junction, s);
      b.add_edge(s, next);
    }
    readout = s1;
    junction = next;
  }
  spec.outputs = {readout};
  spec.latency = cells;
  spec.truth = [](const std::vector<bool>& in) { return std::vector<bool>{in[0]}; };
  spec.quiescent = true;
  spec.fragment = b.build();
  spec.initial = b.initial();
  spec.horizon = kLongHorizon;
  return spec;
}

GadgetSpec and_gadget() {
  GadgetSpec spec;
  spec.kind = GadgetKind::And;
  NetworkBuilder b;
  NodeId px = b.add_node(Side::A);
  NodeId py = b.add_node(Side::A);
  spec.inputs = {px, py};
  auto core = add_and_core(b, b.add_strand(px, 2).back(), b.add_strand(py, 2).back());
  spec.outputs = core.heads;
  spec.latency = 3;
  spec.truth = [](const std::vector<bool>& in) {
    bool v = in[0] && in[1];
    return std::vector<bool>{v, v};
  };
  spec.quiescent = true;
  finish(spec, b, core.heads, kLongHorizon);
  return spec;
}

GadgetSpec xor_gadget() {
  GadgetSpec spec;
  spec.kind = GadgetKind::Xor;
  NetworkBuilder b;
  NodeId px = b.add_node(Side::A);
  NodeId py = b.add_node(Side::A);
  spec.inputs = {px, py};
  std::vector<NodeId> xa, ya;
  for (int i = 0; i < 2; ++i) {
    xa.push_back(b.add_strand(px, 2).back());
    ya.push_back(b.add_strand(py, 2).back());
  }
  auto core = add_xor_core(b, xa, ya, 2);
  spec.outputs = core.heads;
  spec.latency = 3;
  spec.truth = [](const std::vector<bool>& in) {
    bool v = in[0] != in[1];
    return std::vector<bool>{v, v};
  };
  spec.quiescent = true;
  finish(spec, b, core.heads, kLongHorizon);
  return spec;
}

GadgetSpec not_gadget() {
  GadgetSpec spec;
  spec.kind = GadgetKind::Not;
  NetworkBuilder b;
  NodeId px = b.add_node(Side::A);
  spec.inputs = {px};
  auto core = add_not_core(b, b.add_strand(px, 2).back(), 3);
  spec.outputs = core.heads;
  spec.latency = 3;
  spec.truth = [](const std::vector<bool>& in) { return std::vector<bool>{!in[0]}; };
  finish(spec, b, core.heads, kLongHorizon);
  return spec;
}

GadgetSpec or_gadget() {
  GadgetSpec spec;
  spec.kind = GadgetKind::Or;
  NetworkBuilder b;
  NodeId px = b.add_node(Side::A);
  NodeId py = b.add_node(Side::A);
  spec.inputs = {px, py};
  // x OR y = NOT(NOT x AND NOT y), with the final NOT duplicated for fanout.
  auto nx = add_not_core(b, b.add_strand(px, 2).back(), 3);
  auto ny = add_not_core(b, b.add_strand(py, 2).back(), 3);
  auto conj = add_and_core(b, nx.heads[0], ny.heads[0]);
  std::vector<NodeId> heads;
  for (NodeId o : conj.heads) heads.push_back(add_not_core(b, o, 7).heads[0]);
  spec.outputs = heads;
  spec.latency = 5;
  spec.truth = [](const std::vector<bool>& in) {
    bool v = in[0] || in[1];
    return std::vector<bool>{v, v};
  };
  // Reflections inside the isolated fragment may disturb the outputs after
  // the readout; the contract is read at the latency.
  finish(spec, b, heads, spec.latency);
  return spec;
}

GadgetSpec crossover_gadget() {
  GadgetSpec spec;
  spec.kind = GadgetKind::Crossover;
  NetworkBuilder b;
  NodeId pa = b.add_node(Side::A);
  NodeId pb = b.add_node(Side::A);
  spec.inputs = {pa, pb};
  std::vector<NodeId> a_short, b_short, a_long, b_long;
  for (int i = 0; i < 2; ++i) {
    a_short.push_back(b.add_strand(pa, 2).back());
    b_short.push_back(b.add_strand(pb, 2).back());
    a_long.push_back(b.add_strand(pa, 4).back());
    b_long.push_back(b.add_strand(pb, 4).back());
  }
  // c = a XOR b, then c XOR a = b and c XOR b = a.
  auto c = add_xor_core(b, a_short, b_short, 4);
  std::vector<NodeId> c1{c.heads[0], c.heads[1]}, c2{c.heads[2], c.heads[3]};
  auto to_b = add_xor_core(b, c1, a_long, 2);
  auto to_a = add_xor_core(b, c2, b_long, 2);
  spec.outputs = {to_b.heads[0], to_a.heads[0]};
  spec.latency = 4;
  spec.truth = [](const std::vector<bool>& in) { return std::vector<bool>{in[1], in[0]}; };
  spec.quiescent = true;
  std::vector<NodeId> heads = to_b.heads;
  heads.insert(heads.end(), to_a.heads.begin(), to_a.heads.end());
  finish(spec, b, heads, spec.latency);
  return spec;
}

std::vector<GadgetSpec> all_gadgets() {
  return {wire_gadget(2), and_gadget(), xor_gadget(), not_gadget(), or_gadget(), crossover_gadget()};
}

std::string CertificationReport::summary() const {
  std::string s = std::string(to_string(kind)) + ": " + std::to_string(cases) + " cases, ";
  if (ok()) return s + "certified";
  s += std::to_string(failures.size()) + " failures";
  const auto& f = failures.front();
  s += "; first: " + f.message;
  return s;
}

CertificationReport certify_gadget(const GadgetSpec& spec) {
  CertificationReport report;
  report.kind = spec.kind;
  const auto& net = spec.fragment;
  const std::size_t k = spec.inputs.size();

  std::vector<char> exempt(net.size(), 0);
  for (NodeId v : spec.inputs) exempt[v] = 1;
  for (NodeId v : spec.stubs) exempt[v] = 1;
  for (NodeId v = 0; v < net.size(); ++v) {
    if (!exempt[v] && net.degree(v) % 2 != 0) {
      report.failures.push_back({{}, 0, 0, "node " + std::to_string(v + 1) + " has odd degree"});
    }
  }

  std::vector<NodeId> block_a, block_b;
  for (NodeId v = 0; v < net.size(); ++v) {
    if (std::find(spec.inputs.begin(), spec.inputs.end(), v) != spec.inputs.end()) continue;
    (net.side(v) == Side::A ? block_a : block_b).push_back(v);
  }

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    ++report.cases;
    std::vector<bool> in(k);
    Configuration x = spec.initial;
    for (std::size_t i = 0; i < k; ++i) {
      in[i] = (mask >> i) & 1U;
      x.set(spec.inputs[i], in[i] ? 1 : -1);
    }
    const Configuration start = x;
    const auto expected = spec.truth(in);
    const bool check_quiet = spec.quiescent && mask == 0;

    auto fail = [&](std::size_t out, std::uint64_t t, std::string msg) {
      std::string label = "inputs ";
      for (bool v : in) label += v ? '1' : '0';
      report.failures.push_back({in, out, t, label + ", t=" + std::to_string(t) + ": " + msg});
    };

    for (std::uint64_t t = 0; t <= spec.horizon; ++t) {
      if (t > 0) {
        x = half_step(net, x, block_a);
        x = half_step(net, x, block_b);
      }
      bool stop = false;
      for (std::size_t j = 0; j < spec.outputs.size() && !stop; ++j) {
        int s = x.spin(spec.outputs[j]);
        if (expected[j] && t < spec.latency && s != -1) {
          fail(j, t, "output " + std::to_string(j) + " rose before the latency");
          stop = true;
        } else if (expected[j] && t == spec.latency && s != 1) {
          fail(j, t, "output " + std::to_string(j) + " is not +1 at the latency");
          stop = true;
        } else if (!expected[j] && s != -1) {
          fail(j, t, "false output " + std::to_string(j) + " rose");
          stop = true;
        }
      }
      if (!stop && check_quiet && x != start) {
        fail(0, t, "fragment is not quiescent under all-false inputs");
        stop = true;
      }
      if (stop) break;
    }
  }
  return report;
}

WireOrbit wire_orbit(std::size_t cells) {
  GadgetSpec spec = wire_gadget(cells);
  Configuration x = spec.initial;
  x.set(spec.inputs[0], 1);
  auto sched = UpdateSchedule::two_block(spec.fragment);
  auto report = find_period(spec.fragment, sched, x, 1U << 20, PeriodMethod::FirstReturn);
  return {report.period, report.period * sched.block_count()};
}

}  // namespace q2r
