#include "q2r/core.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

namespace q2r {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

// Number of +1 neighbors of node i.
inline std::size_t up_neighbors(const Q2RNetwork& net, const Configuration& x, NodeId i) {
  std::size_t up = 0;
  for (NodeId j : net.neighbors(i)) up += x.up(j);
  return up;
}

inline bool tied(const Q2RNetwork& net, const Configuration& x, NodeId i) {
  return 2 * up_neighbors(net, x, i) == net.degree(i);
}

void check_node(const Q2RNetwork& net, NodeId i) {
  if (i >= net.size()) {
    throw std::out_of_range("node " + std::to_string(i) + " out of range for network of size " +
                            std::to_string(net.size()));
  }
}

void check_length(const Q2RNetwork& net, const Configuration& x) {
  if (x.size() != net.size()) {
    throw std::invalid_argument("configuration length " + std::to_string(x.size()) +
                                " does not match network size " + std::to_string(net.size()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

Configuration::Configuration(std::size_t n, int spin)
    : n_(n), words_(word_count(n), spin > 0 ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

Configuration Configuration::from_string(std::string_view bits) {
  Configuration x(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      x.flip(static_cast<NodeId>(k));
    } else if (bits[k] != '0') {
      throw std::invalid_argument("configuration character at position " + std::to_string(k + 1) +
                                  " is not 0 or 1");
    }
  }
  return x;
}

Configuration Configuration::from_index(std::size_t n, std::uint64_t index) {
  if (n > 64) throw std::invalid_argument("from_index requires n <= 64");
  Configuration x(n);
  if (n > 0) x.words_[0] = index;
  x.clear_tail();
  return x;
}

int Configuration::at(NodeId i) const {
  if (i >= n_) throw std::out_of_range("spin index out of range");
  return spin(i);
}

void Configuration::set(NodeId i, int s) {
  if (i >= n_) throw std::out_of_range("spin index out of range");
  if (s != 1 && s != -1) throw std::invalid_argument("spin must be -1 or +1");
  if (up(i) != (s > 0)) flip(i);
}

Configuration Configuration::negated() const {
  Configuration y = *this;
  for (auto& w : y.words_) w = ~w;
  y.clear_tail();
  return y;
}

std::string Configuration::to_string() const {
  std::string s(n_, '0');
  for (std::size_t k = 0; k < n_; ++k) {
    if (up(static_cast<NodeId>(k))) s[k] = '1';
  }
  return s;
}

std::uint64_t Configuration::to_index() const {
  if (n_ > 64) throw std::invalid_argument("to_index requires n <= 64");
  return n_ == 0 ? 0 : words_[0];
}

std::size_t Configuration::count_up() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

void Configuration::clear_tail() {
  if (n_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
}

// ---------------------------------------------------------------------------
// Q2RNetwork

Q2RNetwork Q2RNetwork::from_edges(std::size_t n, std::span<const Edge> edges,
                                  std::optional<std::vector<Side>> bipartition) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge endpoint out of range for network of size " +
                              std::to_string(n));
    }
    adj[u].push_back(v);
    if (u != v) adj[v].push_back(u);
  }
  return from_adjacency(std::move(adj), std::move(bipartition));
}

Q2RNetwork Q2RNetwork::from_adjacency(std::vector<std::vector<NodeId>> adjacency,
                                      std::optional<std::vector<Side>> bipartition) {
  const std::size_t n = adjacency.size();
  if (bipartition && bipartition->size() != n) {
    throw std::invalid_argument("bipartition length does not match node count");
  }
  Q2RNetwork net;
  net.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    for (NodeId u : list) {
      if (u >= n) throw std::out_of_range("neighbor id out of range");
    }
    std::sort(list.begin(), list.end());
    net.offsets_[v + 1] = net.offsets_[v] + list.size();
  }
  net.adjacency_.reserve(net.offsets_[n]);
  for (auto& list : adjacency) net.adjacency_.insert(net.adjacency_.end(), list.begin(), list.end());
  net.bipartition_ = std::move(bipartition);
  return net;
}

std::size_t Q2RNetwork::max_degree() const {
  std::size_t d = 0;
  for (NodeId v = 0; v < size(); ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<NodeId> Q2RNetwork::nodes_on(Side s) const {
  std::vector<NodeId> out;
  if (!bipartition_) return out;
  for (NodeId v = 0; v < size(); ++v) {
    if ((*bipartition_)[v] == s) out.push_back(v);
  }
  return out;
}

std::vector<Edge> Q2RNetwork::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < size(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Q2RNetwork Q2RNetwork::without_bipartition() const {
  Q2RNetwork copy = *this;
  copy.bipartition_.reset();
  return copy;
}

Q2RNetwork Q2RNetwork::with_bipartition(std::vector<Side> bipartition) const {
  if (bipartition.size() != size()) {
    throw std::invalid_argument("bipartition length does not match node count");
  }
  Q2RNetwork copy = *this;
  copy.bipartition_ = std::move(bipartition);
  return copy;
}

// ---------------------------------------------------------------------------
// Validation

std::string Violation::describe() const {
  auto id = [](NodeId x) { return std::to_string(x + 1); };
  switch (kind) {
    case ViolationKind::OddDegree:
      return "node " + id(u) + " has odd degree";
    case ViolationKind::SelfLoop:
      return "self-loop at node " + id(u);
    case ViolationKind::DuplicateEdge:
      return "duplicate edge " + id(u) + "-" + id(v);
    case ViolationKind::AsymmetricEdge:
      return "edge " + id(u) + "->" + id(v) + " has no reverse";
    case ViolationKind::NonCrossingEdge:
      return "edge " + id(u) + "-" + id(v) + " joins two nodes of the same block";
    case ViolationKind::NotBipartite:
      return "graph is not bipartite (odd cycle through node " + id(u) + ")";
    case ViolationKind::IsolatedNode:
      return "node " + id(u) + " is isolated";
    case ViolationKind::BipartitionSize:
      return "bipartition does not cover every node";
  }
  return "unknown violation";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (const auto& v : violations) os << "\n  " << v.describe();
  return os.str();
}

bool two_colorable(const Q2RNetwork& net, std::vector<Side>* coloring) {
  const std::size_t n = net.size();
  std::vector<int> color(n, -1);
  std::queue<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop();
      for (NodeId v : net.neighbors(u)) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          queue.push(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  if (coloring) {
    coloring->resize(n);
    for (std::size_t v = 0; v < n; ++v) (*coloring)[v] = color[v] == 0 ? Side::A : Side::B;
  }
  return true;
}

bool is_connected(const Q2RNetwork& net) {
  const std::size_t n = net.size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : net.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

ValidationReport validate_network(const Q2RNetwork& net, const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&report](ViolationKind k, NodeId u, NodeId v = 0) {
    report.violations.push_back({k, u, v});
  };
  const std::size_t n = net.size();
  bool structurally_simple = true;

  for (NodeId u = 0; u < n; ++u) {
    auto nb = net.neighbors(u);
    if (nb.empty() && !options.allow_isolated) add(ViolationKind::IsolatedNode, u);
    if (nb.size() % 2 != 0) add(ViolationKind::OddDegree, u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      NodeId v = nb[k];
      if (v == u) {
        add(ViolationKind::SelfLoop, u, u);
        structurally_simple = false;
        continue;
      }
      if (k > 0 && nb[k - 1] == v) {
        if (u < v) add(ViolationKind::DuplicateEdge, u, v);
        structurally_simple = false;
        continue;
      }
      auto back = net.neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u)) {
        add(ViolationKind::AsymmetricEdge, u, v);
        structurally_simple = false;
      }
    }
  }

  if (const auto& bip = net.bipartition()) {
    if (bip->size() != n) {
      add(ViolationKind::BipartitionSize, 0);
    } else {
      for (auto [u, v] : net.edges()) {
        if ((*bip)[u] == (*bip)[v]) add(ViolationKind::NonCrossingEdge, u, v);
      }
    }
  } else if (options.require_bipartite && structurally_simple) {
    if (!two_colorable(net)) {
      // Report an endpoint of some odd cycle: the first conflicting node found by BFS.
      std::vector<int> color(n, -1);
      NodeId culprit = 0;
      bool found = false;
      for (NodeId s = 0; s < n && !found; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<NodeId> q;
        q.push(s);
        while (!q.empty() && !found) {
          NodeId u = q.front();
          q.pop();
          for (NodeId v : net.neighbors(u)) {
            if (color[v] == -1) {
              color[v] = 1 - color[u];
              q.push(v);
            } else if (color[v] == color[u]) {
              culprit = u;
              found = true;
              break;
            }
          }
        }
      }
      add(ViolationKind::NotBipartite, culprit);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Schedules

UpdateSchedule UpdateSchedule::parallel(std::size_t n) {
  UpdateSchedule s;
  s.blocks_.emplace_back(n);
  for (std::size_t v = 0; v < n; ++v) s.blocks_[0][v] = static_cast<NodeId>(v);
  return s;
}

UpdateSchedule UpdateSchedule::two_block(const Q2RNetwork& net) {
  if (!net.has_bipartition()) {
    throw ScheduleError("the (A)(B) schedule requires a network with a bipartition");
  }
  UpdateSchedule s;
  s.blocks_.push_back(net.nodes_on(Side::A));
  s.blocks_.push_back(net.nodes_on(Side::B));
  return s;
}

UpdateSchedule UpdateSchedule::from_blocks(std::vector<std::vector<NodeId>> blocks) {
  UpdateSchedule s;
  s.blocks_ = std::move(blocks);
  for (auto& b : s.blocks_) std::sort(b.begin(), b.end());
  return s;
}

UpdateSchedule default_schedule(const Q2RNetwork& net) {
  return net.has_bipartition() ? UpdateSchedule::two_block(net) : UpdateSchedule::parallel(net.size());
}

void check_schedule(const Q2RNetwork& net, const UpdateSchedule& sched) {
  const std::size_t n = net.size();
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& block : sched.blocks()) {
    for (NodeId v : block) {
      if (v >= n) throw ScheduleError("schedule names node " + std::to_string(v + 1) + " outside the network");
      if (seen[v]) throw ScheduleError("node " + std::to_string(v + 1) + " appears in two blocks");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != n) throw ScheduleError("schedule blocks do not cover every node");
  if (!net.has_bipartition() && n > 0) {
    std::size_t nonempty = 0;
    for (const auto& b : sched.blocks()) nonempty += !b.empty();
    if (nonempty > 1) {
      throw ScheduleError("a network without a bipartition only accepts the parallel schedule");
    }
  }
}

bool is_independent(const Q2RNetwork& net, std::span<const NodeId> block) {
  std::vector<char> in(net.size(), 0);
  for (NodeId v : block) in[v] = 1;
  for (NodeId v : block) {
    for (NodeId u : net.neighbors(v)) {
      if (in[u]) return false;
    }
  }
  return true;
}

bool is_reversible(const Q2RNetwork& net, const UpdateSchedule& sched) {
  return std::all_of(sched.blocks().begin(), sched.blocks().end(),
                     [&net](const auto& b) { return is_independent(net, b); });
}

// ---------------------------------------------------------------------------
// Dynamics primitives

int neighbor_sum(const Q2RNetwork& net, const Configuration& x, NodeId i) {
  check_node(net, i);
  check_length(net, x);
  return 2 * static_cast<int>(up_neighbors(net, x, i)) - static_cast<int>(net.degree(i));
}

int local_next(const Q2RNetwork& net, const Configuration& x, NodeId i) {
  check_node(net, i);
  check_length(net, x);
  return tied(net, x, i) ? -x.spin(i) : x.spin(i);
}

Configuration half_step(const Q2RNetwork& net, const Configuration& x,
                        std::span<const NodeId> block) {
  check_length(net, x);
  Configuration y = x;
  for (NodeId i : block) {
    check_node(net, i);
    if (tied(net, x, i)) y.flip(i);
  }
  return y;
}

Configuration step(const Q2RNetwork& net, const UpdateSchedule& sched, const Configuration& x) {
  check_length(net, x);
  check_schedule(net, sched);
  Configuration y = x;
  for (const auto& block : sched.blocks()) y = half_step(net, y, block);
  return y;
}

Configuration inverse_step(const Q2RNetwork& net, const UpdateSchedule& sched,
                           const Configuration& x) {
  check_length(net, x);
  check_schedule(net, sched);
  for (std::size_t k = 0; k < sched.block_count(); ++k) {
    if (!is_independent(net, sched.blocks()[k])) {
      throw ScheduleError("inverse_step requires independent blocks; block " + std::to_string(k + 1) +
                          " contains adjacent nodes");
    }
  }
  Configuration y = x;
  for (auto it = sched.blocks().rbegin(); it != sched.blocks().rend(); ++it) {
    y = half_step(net, y, *it);
  }
  return y;
}

EnergyValue energy(const Q2RNetwork& net, const Configuration& x) {
  check_length(net, x);
  std::int64_t aligned = 0;
  std::int64_t total = 0;
  for (NodeId u = 0; u < net.size(); ++u) {
    for (NodeId v : net.neighbors(u)) {
      if (u < v) {
        ++total;
        aligned += x.up(u) == x.up(v);
      }
    }
  }
  // Each aligned edge contributes -1, each anti-aligned edge +1.
  return {(total - aligned) - aligned};
}

// ---------------------------------------------------------------------------
// Stepper

Stepper::Stepper(const Q2RNetwork& net, const UpdateSchedule& sched) : net_(net), sched_(sched) {
  check_schedule(net, sched);
  reversible_ = is_reversible(net, sched);
}

void Stepper::apply_block(Configuration& x, std::span<const NodeId> block) {
  flips_.clear();
  for (NodeId i : block) {
    if (tied(net_, x, i)) flips_.push_back(i);
  }
  for (NodeId i : flips_) x.flip(i);
}

void Stepper::half_step(Configuration& x, std::size_t block_index) {
  apply_block(x, sched_.blocks()[block_index]);
}

void Stepper::step(Configuration& x) {
  for (const auto& block : sched_.blocks()) apply_block(x, block);
}

void Stepper::inverse(Configuration& x) {
  if (!reversible_) throw ScheduleError("inverse stepping requires independent blocks");
  for (auto it = sched_.blocks().rbegin(); it != sched_.blocks().rend(); ++it) apply_block(x, *it);
}

}  // namespace q2r
