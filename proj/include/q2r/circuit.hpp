#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace q2r {

using GateId = std::uint32_t;

enum class GateKind { Input, And, Or };

const char* to_string(GateKind kind);

struct Gate {
  GateId id = 0;
  GateKind kind = GateKind::Input;
  std::vector<GateId> inputs;
};

/// Structurally valid monotone circuit: unique ids, known references,
/// acyclic. Gates are stored in a topological order.
class Circuit {
 public:
  Circuit() = default;
  /// Throws std::invalid_argument on duplicate ids, unknown references,
  /// cycles or unknown outputs.
  Circuit(std::vector<Gate> gates, std::vector<GateId> outputs);

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<GateId>& outputs() const { return outputs_; }
  std::vector<GateId> inputs() const;

  bool contains(GateId id) const { return index_.count(id) > 0; }
  const Gate& gate(GateId id) const { return gates_[index_.at(id)]; }
  /// 0 for inputs, otherwise the longest path from an input.
  int layer(GateId id) const { return layers_[index_.at(id)]; }
  int depth() const;
  std::size_t fanout(GateId id) const { return fanout_[index_.at(id)]; }
  bool is_output(GateId id) const;
  /// Consumers of `id` in topological order (a gate using `id` twice appears twice).
  std::vector<GateId> consumers(GateId id) const;

 private:
  std::vector<Gate> gates_;
  std::vector<GateId> outputs_;
  std::unordered_map<GateId, std::size_t> index_;
  std::vector<int> layers_;
  std::vector<std::size_t> fanout_;
};

using Assignment = std::map<GateId, bool>;

/// Netlist lines: `input <id>`, `gate <id> and|or <in1> <in2>`,
/// `output <id>`; '#' comments. Errors carry the offending line number.
Circuit parse_circuit(std::string_view text);
std::string circuit_to_text(const Circuit& c);

/// `assign <id>=<0|1> ...` (one or more lines).
Assignment parse_assignment(std::string_view text);
std::string assignment_to_text(const Assignment& a);

enum class As2mRule { Synchrony, Alternation, Fanin, Fanout, InputToOr, Outputs };

struct As2mViolation {
  As2mRule rule;
  GateId gate;
  std::string message;
};

struct As2mReport {
  std::vector<As2mViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(As2mRule rule) const;
  std::string summary() const;
};

/// Alternating, synchronous, monotone, fanin/fanout-2 checks. `strict`
/// demands fanout exactly two for every non-output node; the relaxed form
/// (used by the compiler) accepts fanout up to two.
As2mReport validate_as2m(const Circuit& c, bool strict = true);

/// Layer-by-layer evaluation of every gate (inputs included).
std::map<GateId, bool> evaluate_circuit(const Circuit& c, const Assignment& assignment);

/// Strict AS2MCVP instance with `width` nodes per layer and `depth` gate
/// layers (odd, so the top layer is OR). width >= 2.
Circuit random_as2m_circuit(std::size_t width, std::size_t depth, std::mt19937_64& rng);

Assignment random_assignment(const Circuit& c, std::mt19937_64& rng);

}  // namespace q2r
