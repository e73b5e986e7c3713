#include "q2r/compiler.hpp"

#include <algorithm>

#include "q2r/gadgets.hpp"

namespace q2r {

namespace {

// Strand length from a source (port or gate readout, side A) to the next
// tie vertex: the tie flips three half-steps after the source.
constexpr std::uint64_t kLink = 2;

void require_certified_gadgets() {
  static const std::string failure = [] {
    for (const auto& spec : {and_gadget(), not_gadget(), or_gadget()}) {
      auto report = certify_gadget(spec);
      if (!report.ok()) return report.summary();
    }
    return std::string();
  }();
  if (!failure.empty()) throw CompileError("gadget certification failed: " + failure);
}

}  // namespace

CompiledCircuit compile_circuit(const Circuit& c) {
  auto check = validate_as2m(c, /*strict=*/false);
  if (!check.ok()) throw CompileError("not an AS2MCVP circuit:\n" + check.summary());
  require_certified_gadgets();

  // Half-step at which the tie vertices of each layer flip.
  const int depth = c.depth();
  std::vector<std::uint64_t> h_tie(depth + 1, 0);
  std::uint64_t h = kLink + 1;
  for (int l = 1; l <= depth; ++l) {
    h_tie[l] = h;
    std::uint64_t h_out = (l % 2 == 1) ? h + 5 : h + 1;
    h = h_out + kLink + 1;
  }

  NetworkBuilder b;
  CompiledCircuit cc;
  std::map<GateId, std::vector<NodeId>> sources;
  std::size_t padding = 0;

  auto take = [&](GateId src) {
    auto& pool = sources.at(src);
    NodeId from = pool.back();
    pool.pop_back();
    padding += kLink;
    return b.add_strand(from, kLink).back();
  };
  auto clocked_not = [&](NodeId x, std::uint64_t at) {
    padding += 2 * (at - 1);
    return add_not_core(b, x, at).heads[0];
  };

  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Input) {
      NodeId port = b.add_node(Side::A);
      cc.input_ports[g.id] = port;
      sources[g.id] = {port, port};
      continue;
    }
    const std::uint64_t at = h_tie[c.layer(g.id)];
    NodeId x = take(g.inputs[0]);
    NodeId y = take(g.inputs[1]);
    if (g.kind == GateKind::And) {
      auto core = add_and_core(b, x, y);
      sources[g.id] = core.heads;
      cc.readouts[g.id] = {core.heads[0], (at + 1) / 2 + 1};
    } else {
      auto conj = add_and_core(b, clocked_not(x, at), clocked_not(y, at));
      std::vector<NodeId> heads;
      for (NodeId o : conj.heads) heads.push_back(clocked_not(o, at + 4));
      sources[g.id] = heads;
      cc.readouts[g.id] = {heads[0], (at + 5) / 2 + 1};
    }
  }

  // Unused outputs are run out far enough that nothing reflected from their
  // ends can reach a readout before the horizon, then closed in pairs.
  const std::uint64_t run_out = h + 2;
  std::vector<NodeId> ends[2];
  for (auto& [id, pool] : sources) {
    for (NodeId s : pool) {
      NodeId end = b.add_strand(s, run_out).back();
      padding += run_out;
      ends[static_cast<int>(b.side(end))].push_back(end);
    }
  }
  if ((ends[0].size() + ends[1].size()) % 2 != 0) {
    throw std::logic_error("odd number of dangling strands");
  }
  if (ends[0].size() % 2 != 0) {
    NodeId moved = b.add_strand(ends[0].back(), 1).back();
    ++padding;
    ends[0].pop_back();
    ends[1].push_back(moved);
  }
  for (auto& group : ends) {
    for (std::size_t i = 0; i + 1 < group.size(); i += 2) {
      NodeId t = b.add_node(other(b.side(group[i])));
      b.add_edge(group[i], t);
      b.add_edge(group[i + 1], t);
    }
  }

  cc.network = b.build();
  cc.initial = b.initial();
  cc.outputs = c.outputs();
  for (const auto& [id, r] : cc.readouts) cc.horizon = std::max(cc.horizon, r.time);
  cc.stats.padding_nodes = padding;
  cc.stats.gadget_nodes = cc.network.size() - padding;
  return cc;
}

CompiledCircuit compile_circuit(const Circuit& c, const Assignment& assignment) {
  CompiledCircuit cc = compile_circuit(c);
  cc.initial = apply_assignment(cc, assignment);
  return cc;
}

Configuration apply_assignment(const CompiledCircuit& cc, const Assignment& assignment) {
  Configuration x = cc.initial;
  for (const auto& [id, port] : cc.input_ports) {
    auto it = assignment.find(id);
    if (it == assignment.end()) throw CompileError("no value for input " + std::to_string(id));
    x.set(port, it->second ? 1 : -1);
  }
  for (const auto& [id, v] : assignment) {
    if (!cc.input_ports.count(id)) throw CompileError("assignment names non-input " + std::to_string(id));
  }
  return x;
}

std::map<GateId, bool> simulate_readouts(const CompiledCircuit& cc, const Configuration& x0) {
  std::map<std::uint64_t, std::vector<GateId>> due;
  for (const auto& [id, r] : cc.readouts) due[r.time].push_back(id);
  auto sched = UpdateSchedule::two_block(cc.network);
  Stepper stepper(cc.network, sched);
  Configuration x = x0;
  std::map<GateId, bool> values;
  for (std::uint64_t t = 0; t <= cc.horizon; ++t) {
    if (t > 0) stepper.step(x);
    if (auto it = due.find(t); it != due.end()) {
      for (GateId g : it->second) values[g] = x.up(cc.readouts.at(g).node);
    }
  }
  return values;
}

}  // namespace q2r
