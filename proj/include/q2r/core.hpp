#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace q2r {

/// Dense 0-based node index. File formats use 1-based ids.
using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Update class of a node in a two-block bipartition.
enum class Side : std::uint8_t { A = 0, B = 1 };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

/// Spin vector in {-1,+1}^n, bit-packed (bit set <=> +1).
///
/// Unused bits of the last word are kept zero so that equality and hashing
/// can compare words directly.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n, int spin = -1);

  /// Parses the 0/1 text encoding: '1' is +1, '0' is -1.
  static Configuration from_string(std::string_view bits);
  /// Bit k of `index` is node k (set = +1). Requires n <= 64.
  static Configuration from_index(std::size_t n, std::uint64_t index);

  std::size_t size() const { return n_; }

  bool up(NodeId i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  int spin(NodeId i) const { return up(i) ? 1 : -1; }
  /// Bounds-checked spin access.
  int at(NodeId i) const;

  void set(NodeId i, int spin);
  void flip(NodeId i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  Configuration negated() const;
  std::string to_string() const;
  std::uint64_t to_index() const;
  std::size_t count_up() const;

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const Configuration&) const = default;

 private:
  void clear_tail();

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Even-degree simple graph with an optional (A, B) bipartition.
///
/// The adjacency is stored as CSR with sorted neighbor lists. Construction
/// only checks index ranges; structural rules are reported by
/// validate_network so that malformed inputs can be diagnosed rather than
/// rejected opaquely.
class Q2RNetwork {
 public:
  Q2RNetwork() : offsets_{0} {}

  static Q2RNetwork from_edges(std::size_t n, std::span<const Edge> edges,
                               std::optional<std::vector<Side>> bipartition = std::nullopt);
  /// Per-node neighbor lists taken as given (may be asymmetric).
  static Q2RNetwork from_adjacency(std::vector<std::vector<NodeId>> adjacency,
                                   std::optional<std::vector<Side>> bipartition = std::nullopt);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }
  std::size_t max_degree() const;

  bool has_bipartition() const { return bipartition_.has_value(); }
  const std::optional<std::vector<Side>>& bipartition() const { return bipartition_; }
  Side side(NodeId v) const { return (*bipartition_)[v]; }
  std::vector<NodeId> nodes_on(Side s) const;

  /// Undirected edges (u < v), sorted. Assumes a symmetric adjacency.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  Q2RNetwork without_bipartition() const;
  Q2RNetwork with_bipartition(std::vector<Side> bipartition) const;

  bool operator==(const Q2RNetwork&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::optional<std::vector<Side>> bipartition_;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationOptions {
  /// Without a stored bipartition, require that some 2-coloring exists.
  bool require_bipartite = true;
  /// Degree-0 nodes are rejected unless explicitly permitted (port stubs).
  bool allow_isolated = false;
};

enum class ViolationKind {
  OddDegree,
  SelfLoop,
  DuplicateEdge,
  AsymmetricEdge,
  NonCrossingEdge,
  NotBipartite,
  IsolatedNode,
  BipartitionSize,
};

struct Violation {
  ViolationKind kind;
  NodeId u = 0;
  NodeId v = 0;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_network(const Q2RNetwork& net, const ValidationOptions& options = {});

/// True if a proper 2-coloring exists; writes it to `coloring` when given.
bool two_colorable(const Q2RNetwork& net, std::vector<Side>* coloring = nullptr);
bool is_connected(const Q2RNetwork& net);

// ---------------------------------------------------------------------------
// Schedules

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered disjoint blocks covering every node.
class UpdateSchedule {
 public:
  UpdateSchedule() = default;

  static UpdateSchedule parallel(std::size_t n);
  /// The classic (A)(B) schedule. Throws ScheduleError without a bipartition.
  static UpdateSchedule two_block(const Q2RNetwork& net);
  static UpdateSchedule from_blocks(std::vector<std::vector<NodeId>> blocks);

  const std::vector<std::vector<NodeId>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

 private:
  std::vector<std::vector<NodeId>> blocks_;
};

/// (A)(B) when the network carries a bipartition, otherwise parallel.
UpdateSchedule default_schedule(const Q2RNetwork& net);

/// Throws ScheduleError if blocks overlap, miss a node, or the network has
/// no bipartition and the schedule is not the single parallel block.
void check_schedule(const Q2RNetwork& net, const UpdateSchedule& sched);

bool is_independent(const Q2RNetwork& net, std::span<const NodeId> block);
bool is_reversible(const Q2RNetwork& net, const UpdateSchedule& sched);

// ---------------------------------------------------------------------------
// Dynamics primitives

/// Signed sum of neighbor spins.
int neighbor_sum(const Q2RNetwork& net, const Configuration& x, NodeId i);

/// Tie-flip rule: -x_i when the neighbor sum is zero, else x_i.
int local_next(const Q2RNetwork& net, const Configuration& x, NodeId i);

/// Synchronous update of `block` evaluated on `x`; other nodes are copied.
Configuration half_step(const Q2RNetwork& net, const Configuration& x,
                        std::span<const NodeId> block);

/// One scheduled step: half_step folded over the blocks in order.
Configuration step(const Q2RNetwork& net, const UpdateSchedule& sched, const Configuration& x);

/// Half-steps in reverse block order. Every block must be independent.
Configuration inverse_step(const Q2RNetwork& net, const UpdateSchedule& sched,
                           const Configuration& x);

struct EnergyValue {
  std::int64_t value = 0;
  auto operator<=>(const EnergyValue&) const = default;
};

/// E(x) = -sum over edges {i,j} of x_i x_j.
EnergyValue energy(const Q2RNetwork& net, const Configuration& x);

/// Pre-validated stepping loop for hot paths. Holds references; the network
/// and schedule must outlive it.
class Stepper {
 public:
  Stepper(const Q2RNetwork& net, const UpdateSchedule& sched);
  Stepper(const Q2RNetwork& net, UpdateSchedule&& sched) = delete;

  void half_step(Configuration& x, std::size_t block_index);
  void step(Configuration& x);
  void inverse(Configuration& x);

  const Q2RNetwork& network() const { return net_; }
  const UpdateSchedule& schedule() const { return sched_; }

 private:
  void apply_block(Configuration& x, std::span<const NodeId> block);

  const Q2RNetwork& net_;
  const UpdateSchedule& sched_;
  std::vector<NodeId> flips_;
  bool reversible_;
};

}  // namespace q2r
