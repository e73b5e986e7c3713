#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "q2r/core.hpp"

namespace q2r {

/// Incremental construction of bipartite fragments with initial spins.
class NetworkBuilder {
 public:
  NodeId add_node(Side side, int spin = -1);
  /// Throws std::logic_error for same-side, self or repeated edges.
  void add_edge(NodeId a, NodeId b);
  /// Path of `length` fresh nodes hanging off `from`, sides alternating.
  /// Returns the new nodes in order (empty when length is 0).
  std::vector<NodeId> add_strand(NodeId from, std::size_t length);
  /// Two frozen +1 nodes on `side` sharing three +1 neighbours. Each of the
  /// pair has degree 3 and expects exactly one external edge.
  std::pair<NodeId, NodeId> add_constant_pair(Side side);

  std::size_t size() const { return sides_.size(); }
  Side side(NodeId v) const { return sides_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  void set_spin(NodeId v, int spin) { spins_[v] = spin; }

  Q2RNetwork build() const;
  Configuration initial() const;

 private:
  std::vector<Side> sides_;
  std::vector<int> spins_;
  std::vector<std::vector<NodeId>> adjacency_;
};

// Tie-vertex cores shared by the standalone gadgets and the compiler. Every
// signal arriving at a core ends on side A and arrives at the same half-step;
// the tie vertex sits on side B. The returned heads are the first nodes of
// the output strands (side A).

struct CoreHandle {
  NodeId tie = 0;
  std::vector<NodeId> heads;
};

/// AND: tie vertex with the two operands upstream and two outputs.
CoreHandle add_and_core(NetworkBuilder& b, NodeId x, NodeId y);

/// XOR: `x_arms` and `y_arms` (equal counts) upstream, `outputs` heads and
/// the same number of frozen +1 constants downstream. `outputs` is even.
CoreHandle add_xor_core(NetworkBuilder& b, std::span<const NodeId> x_arms,
                        std::span<const NodeId> y_arms, std::size_t outputs);

/// Clocked NOT: the tie vertex flips at half-step `h_tie` (odd) unless x
/// does. Two clock strands from one constant pair arrive together with x.
CoreHandle add_not_core(NetworkBuilder& b, NodeId x, std::uint64_t h_tie);

enum class GadgetKind { Wire, And, Xor, Not, Or, Crossover };

const char* to_string(GadgetKind kind);

/// A certified-by-construction fragment. Input ports are clamped during
/// certification (excluded from both update blocks).
struct GadgetSpec {
  GadgetKind kind = GadgetKind::Wire;
  Q2RNetwork fragment;
  Configuration initial;
  std::vector<NodeId> inputs;
  /// Readout node per output signal.
  std::vector<NodeId> outputs;
  /// Ends of dangling output strands; together with the inputs these are
  /// the only nodes allowed odd degree.
  std::vector<NodeId> stubs;
  /// Steps until a true output reads +1.
  std::uint64_t latency = 0;
  /// Steps over which false outputs must stay at -1.
  std::uint64_t horizon = 0;
  std::function<std::vector<bool>(const std::vector<bool>&)> truth;
  /// All-false inputs leave every node at its initial spin.
  bool quiescent = false;
};

/// Diamond chain of `cells` cells: junction J0 (side B, the input) feeds two
/// side-A nodes, which meet in J1, and so on. The readout is a side node of
/// the last cell, so the latency equals the cell count.
GadgetSpec wire_gadget(std::size_t cells);
GadgetSpec and_gadget();
GadgetSpec xor_gadget();
GadgetSpec not_gadget();
GadgetSpec or_gadget();
/// Crossover from three XORs: outputs are (b, a).
GadgetSpec crossover_gadget();

std::vector<GadgetSpec> all_gadgets();

struct CertificationFailure {
  std::vector<bool> inputs;
  std::size_t output = 0;
  std::uint64_t time = 0;
  std::string message;
};

struct CertificationReport {
  GadgetKind kind = GadgetKind::Wire;
  std::size_t cases = 0;
  std::vector<CertificationFailure> failures;

  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

/// Exhaustive check over all input assignments: degree parity, readout
/// timing, false outputs staying low up to the horizon, and quiescence.
CertificationReport certify_gadget(const GadgetSpec& spec);

/// Unclamped orbit of a single-cell-signal wire under (A)(B): the period in
/// full steps and in block updates (two per step).
struct WireOrbit {
  std::uint64_t steps = 0;
  std::uint64_t block_updates = 0;
};

WireOrbit wire_orbit(std::size_t cells);

}  // namespace q2r
