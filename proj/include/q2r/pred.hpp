#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "q2r/compiler.hpp"
#include "q2r/core.hpp"
#include "q2r/io.hpp"

namespace q2r {

/// Does node v differ from its initial state after t steps?
struct PredInstance {
  Q2RNetwork network;
  Configuration x;
  std::uint64_t t = 0;
  NodeId v = 0;
};

/// The instance for one output gate: v is its readout node (initially -1)
/// and t its readout time. Throws std::invalid_argument for non-outputs.
PredInstance to_pred_instance(const CompiledCircuit& cc, GateId output_gate);

/// Simulates t steps under the default schedule.
bool answer_pred(const PredInstance& inst);

void write_pred_instance(std::ostream& os, const PredInstance& inst);
/// Requires a configuration line and a pred line.
PredInstance pred_from_document(const NetworkDocument& doc);

}  // namespace q2r
