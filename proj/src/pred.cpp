#include "q2r/pred.hpp"

#include <algorithm>
#include <ostream>

namespace q2r {

PredInstance to_pred_instance(const CompiledCircuit& cc, GateId output_gate) {
  if (std::find(cc.outputs.begin(), cc.outputs.end(), output_gate) == cc.outputs.end()) {
    throw std::invalid_argument("gate " + std::to_string(output_gate) + " is not a circuit output");
  }
  const Readout& r = cc.readouts.at(output_gate);
  return {cc.network, cc.initial, r.time, r.node};
}

bool answer_pred(const PredInstance& inst) {
  if (inst.x.size() != inst.network.size()) throw std::invalid_argument("configuration length mismatch");
  if (inst.v >= inst.network.size()) throw std::invalid_argument("objective node out of range");
  auto sched = default_schedule(inst.network);
  Stepper stepper(inst.network, sched);
  Configuration x = inst.x;
  for (std::uint64_t t = 0; t < inst.t; ++t) stepper.step(x);
  return x.up(inst.v) != inst.x.up(inst.v);
}

void write_pred_instance(std::ostream& os, const PredInstance& inst) {
  write_network(os, inst.network);
  write_configuration(os, inst.x);
  write_pred(os, {inst.t, inst.v});
}

PredInstance pred_from_document(const NetworkDocument& doc) {
  if (!doc.config) throw ParseError(0, "PRED instance needs a configuration line");
  if (!doc.pred) throw ParseError(0, "PRED instance needs a 'pred t=<t> v=<id>' line");
  if (doc.config->size() != doc.network.size()) throw ParseError(0, "configuration length mismatch");
  if (doc.pred->v >= doc.network.size()) throw ParseError(0, "pred node out of range");
  return {doc.network, *doc.config, doc.pred->t, doc.pred->v};
}

}  // namespace q2r
