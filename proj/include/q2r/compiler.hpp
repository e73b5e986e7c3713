#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "q2r/circuit.hpp"
#include "q2r/core.hpp"

namespace q2r {

struct Readout {
  NodeId node = 0;
  /// Step at which the node holds the gate value (+1 iff true).
  std::uint64_t time = 0;
};

struct CompileStats {
  /// Tie vertices, constant blocks, ports and terminators.
  std::size_t gadget_nodes = 0;
  /// Strand nodes: links, clocks and dangling-output extensions.
  std::size_t padding_nodes = 0;
};

struct CompiledCircuit {
  Q2RNetwork network;
  /// Spins for the all-false assignment; see apply_assignment.
  Configuration initial;
  std::map<GateId, NodeId> input_ports;
  std::map<GateId, Readout> readouts;
  std::vector<GateId> outputs;
  std::uint64_t horizon = 0;
  CompileStats stats;
};

class CompileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lays out the circuit with the certified AND and clocked NOT cores (OR is
/// NOT of AND of NOTs). Requires a relaxed AS2MCVP circuit; throws
/// CompileError otherwise or if the gadget set fails certification.
CompiledCircuit compile_circuit(const Circuit& c);

/// Same, with the input ports set from `assignment`.
CompiledCircuit compile_circuit(const Circuit& c, const Assignment& assignment);

/// Initial configuration for another assignment of the same layout.
Configuration apply_assignment(const CompiledCircuit& cc, const Assignment& assignment);

/// Gate values read from a simulation of the compiled network.
std::map<GateId, bool> simulate_readouts(const CompiledCircuit& cc, const Configuration& x0);

}  // namespace q2r
