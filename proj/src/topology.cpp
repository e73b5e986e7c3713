#include "q2r/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace q2r {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

RingNetwork build_ring(std::uint64_t p, bool swapped) {
  if (!is_prime(p)) throw std::invalid_argument("ring size parameter " + std::to_string(p) + " is not prime");
  const std::size_t n = 2 * p;
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto a = static_cast<NodeId>(k);
    auto b = static_cast<NodeId>((k + 1) % n);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::vector<Side> sides(n);
  for (std::size_t k = 0; k < n; ++k) {
    // 0-based even index <=> 1-based odd node.
    bool odd_one_based = k % 2 == 0;
    sides[k] = (odd_one_based != swapped) ? Side::A : Side::B;
  }
  RingNetwork ring;
  ring.p = p;
  ring.network = Q2RNetwork::from_edges(n, edges, std::move(sides));
  ring.canonical = Configuration(n);
  ring.canonical.set(0, 1);
  return ring;
}

std::vector<PortSpin> frozen_ports(const RingNetwork& ring) {
  return {{0, 1}, {static_cast<NodeId>(ring.p), -1}};
}

std::vector<PortSpin> frozen_ports(const CompositeNetwork& net) {
  std::vector<PortSpin> out;
  for (std::size_t i = 0; i < net.primes.size(); ++i) {
    out.push_back({net.ring_offsets[i], 1});
    out.push_back({static_cast<NodeId>(net.ring_offsets[i] + net.primes[i]), -1});
  }
  return out;
}

CompositeNetwork build_composite(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("composite needs at least one prime");
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!is_prime(sorted[i])) throw std::invalid_argument(std::to_string(sorted[i]) + " is not prime");
    if (sorted[i] == 2) throw std::invalid_argument("p = 2 cannot be used in a composite network");
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw std::invalid_argument("prime " + std::to_string(sorted[i]) + " listed twice");
    }
  }

  CompositeNetwork out;
  out.primes = sorted;
  const std::size_t k = sorted.size();

  std::vector<Edge> edges;
  std::vector<Side> sides;
  std::vector<char> up;
  // Port handles for every position in the ring-of-rings: (+1 port, -1 port).
  std::vector<std::pair<NodeId, NodeId>> ports;

  for (std::size_t i = 0; i < k; ++i) {
    bool swapped = i % 2 == 1;
    RingNetwork ring = build_ring(sorted[i], swapped);
    auto offset = static_cast<NodeId>(sides.size());
    out.ring_offsets.push_back(offset);
    out.ring_swapped.push_back(swapped);
    for (auto [a, b] : ring.network.edges()) edges.emplace_back(a + offset, b + offset);
    for (NodeId v = 0; v < ring.network.size(); ++v) {
      sides.push_back(ring.network.side(v));
      up.push_back(ring.canonical.up(v));
    }
    ports.emplace_back(offset, static_cast<NodeId>(offset + sorted[i]));
  }

  auto add_node = [&](Side s, bool is_up) {
    sides.push_back(s);
    up.push_back(is_up);
    return static_cast<NodeId>(sides.size() - 1);
  };
  auto add_coupler = [&](NodeId a, NodeId b) {
    Edge e{std::min(a, b), std::max(a, b)};
    edges.push_back(e);
    out.couplers.push_back(e);
  };

  if (k == 2) {
    auto [p0, m0] = ports[0];
    auto [p1, m1] = ports[1];
    add_coupler(p0, m0);
    add_coupler(p1, m1);
    add_coupler(p0, p1);
    add_coupler(m0, m1);
  } else if (k >= 3) {
    if (k % 2 == 1) {
      // Balancer at position k (class pattern of a swapped ring): a frozen
      // +1 4-cycle through bp and a frozen -1 4-cycle through bm.
      Side ps = Side::B;
      NodeId bp = add_node(ps, true);
      NodeId q1 = add_node(other(ps), true);
      NodeId q2 = add_node(other(ps), true);
      NodeId t = add_node(ps, true);
      NodeId bm = add_node(other(ps), false);
      NodeId r1 = add_node(ps, false);
      NodeId r2 = add_node(ps, false);
      NodeId u = add_node(other(ps), false);
      for (NodeId v : {bp, q1, q2, t, bm, r1, r2, u}) out.coupler_nodes.push_back(v);
      for (Edge e : {Edge{bp, q1}, Edge{bp, q2}, Edge{q1, t}, Edge{q2, t}, Edge{bm, r1}, Edge{bm, r2},
                     Edge{r1, u}, Edge{r2, u}}) {
        add_coupler(e.first, e.second);
      }
      ports.emplace_back(bp, bm);
    }
    const std::size_t K = ports.size();
    for (std::size_t i = 0; i < K; ++i) {
      auto [pi, mi] = ports[i];
      auto [pn, mn] = ports[(i + 1) % K];
      add_coupler(pi, pn);
      add_coupler(mi, mn);
      add_coupler(pi, mi);
      add_coupler(pi, ports[(i + 2) % K].second);
    }
  }

  const std::size_t n = sides.size();
  out.network = Q2RNetwork::from_edges(n, edges, std::move(sides));
  out.canonical = Configuration(n);
  for (NodeId v = 0; v < n; ++v) {
    if (up[v]) out.canonical.flip(v);
  }
  return out;
}

TorusNetwork build_torus(std::size_t width, std::size_t height) {
  if (width % 2 != 0 || height % 2 != 0) {
    throw std::invalid_argument("torus dimensions must be even");
  }
  if (width < 4 || height < 4) {
    throw std::invalid_argument("torus dimensions below 4 wrap onto duplicate neighbours");
  }
  const std::size_t n = width * height;
  std::vector<Edge> edges;
  std::vector<Side> sides(n);
  auto id = [width](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * width + c); };
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      NodeId v = id(r, c);
      sides[v] = (r + c) % 2 == 0 ? Side::A : Side::B;
      NodeId right = id(r, (c + 1) % width);
      NodeId down = id((r + 1) % height, c);
      edges.emplace_back(std::min(v, right), std::max(v, right));
      edges.emplace_back(std::min(v, down), std::max(v, down));
    }
  }
  TorusNetwork t;
  t.width = width;
  t.height = height;
  t.network = Q2RNetwork::from_edges(n, edges, std::move(sides));
  return t;
}

Q2RNetwork random_bipartite_even(std::size_t n, std::mt19937_64& rng, std::size_t extra_cycles) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("random_bipartite_even needs even n >= 4");
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::size_t half = n / 2;
  std::vector<NodeId> as(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<NodeId> bs(perm.begin() + static_cast<std::ptrdiff_t>(half), perm.end());
  std::vector<Side> sides(n);
  for (NodeId v : as) sides[v] = Side::A;
  for (NodeId v : bs) sides[v] = Side::B;

  std::set<Edge> edges;
  auto key = [](NodeId a, NodeId b) { return Edge{std::min(a, b), std::max(a, b)}; };
  auto alternating_cycle = [&](const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    std::vector<Edge> cyc;
    for (std::size_t i = 0; i < a.size(); ++i) {
      cyc.push_back(key(a[i], b[i]));
      cyc.push_back(key(b[i], a[(i + 1) % a.size()]));
    }
    return cyc;
  };

  for (auto e : alternating_cycle(as, bs)) edges.insert(e);

  std::uniform_int_distribution<std::size_t> len(2, half);
  for (std::size_t c = 0; c < extra_cycles; ++c) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::size_t L = len(rng);
      std::vector<NodeId> a = as, b = bs;
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      a.resize(L);
      b.resize(L);
      auto cyc = alternating_cycle(a, b);
      if (std::none_of(cyc.begin(), cyc.end(), [&](const Edge& e) { return edges.count(e) > 0; })) {
        for (auto e : cyc) edges.insert(e);
        break;
      }
    }
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Q2RNetwork::from_edges(n, list, std::move(sides));
}

Configuration random_configuration(std::size_t n, std::mt19937_64& rng) {
  Configuration x(n);
  for (NodeId v = 0; v < n; ++v) {
    if (rng() & 1U) x.flip(v);
  }
  return x;
}

}  // namespace q2r
