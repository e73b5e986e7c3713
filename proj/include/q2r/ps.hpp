#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "q2r/core.hpp"
#include "q2r/io.hpp"

namespace q2r {

enum class PsRole : std::uint8_t { I, GE, S, F };

/// I/GE: `a` is the original node. S/F: `a` is the copy index i and `b`
/// the position j, both 1-based.
struct PsTag {
  PsRole role = PsRole::I;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  bool operator==(const PsTag&) const = default;
};

/// Parallel simulator of a two-block network. Node order: I block, GE
/// block, then the S copies and the F copies, four nodes each. The network
/// has no bipartition and runs under the parallel schedule only.
struct PSNetwork {
  Q2RNetwork network;
  std::vector<PsTag> roles;
  std::size_t alpha = 0;
  std::size_t original_size = 0;

  NodeId i_node(NodeId v) const { return v; }
  NodeId ge_node(NodeId v) const { return static_cast<NodeId>(original_size + v); }
  NodeId s_node(std::size_t i, std::size_t j) const {
    return static_cast<NodeId>(2 * original_size + 4 * (i - 1) + (j - 1));
  }
  NodeId f_node(std::size_t i, std::size_t j) const {
    return static_cast<NodeId>(2 * original_size + 4 * alpha + 4 * (i - 1) + (j - 1));
  }
};

/// Throws std::invalid_argument without a bipartition or when the network
/// fails validation.
PSNetwork build_ps(const Q2RNetwork& net);

/// I carries x, GE carries -x, every S copy (-1,-1,+1,+1), every F copy -1.
Configuration ps_initial(const PSNetwork& ps, const Configuration& x);

/// The I block of a PS state.
Configuration ps_project(const PSNetwork& ps, const Configuration& state);

enum class PsPhase { AActive, BActive };

/// Which original block the next parallel step updates, read from the
/// polarity of the S copies. Throws std::invalid_argument if they are not in
/// one of the two canonical states.
PsPhase half_step_phase(const PSNetwork& ps, const Configuration& state);

enum class PsCheck { Projection, Mirror, SCycle, FFixed, Alternation };

const char* to_string(PsCheck check);

struct PsFailure {
  PsCheck check = PsCheck::Projection;
  /// Parallel step count at which the check failed.
  std::uint64_t ps_time = 0;
  /// Offending PS node (0-based).
  NodeId node = 0;
  std::string message;
};

struct PsReport {
  std::uint64_t ps_steps = 0;
  std::optional<PsFailure> failure;
  bool ok() const { return !failure.has_value(); }
  std::string summary() const;
};

/// Runs the PS for 2T parallel steps against the original under (A)(B) for
/// T steps, checking projection at every even time and the mirror, S
/// 2-cycle, F fixedness and A/B alternation at every step.
PsReport verify_ps(const Q2RNetwork& net, const Configuration& x, std::uint64_t T);

/// Same, starting the PS from an arbitrary state (negative controls).
PsReport verify_ps(const Q2RNetwork& net, const PSNetwork& ps, const Configuration& x,
                   const Configuration& ps_start, std::uint64_t T);

/// Core network format followed by `role <id> I <orig>|GE <orig>|S <i> <j>|F <i> <j>`.
void write_ps(std::ostream& os, const PSNetwork& ps);
/// Rebuilds the PS layout from role lines; throws ParseError when they do
/// not describe one.
PSNetwork ps_from_document(const NetworkDocument& doc);

}  // namespace q2r
