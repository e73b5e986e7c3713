#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "q2r/core.hpp"
#include "q2r/io.hpp"

namespace q2r {

bool is_prime(std::uint64_t p);

/// The 2p-node cycle. Odd (1-based) nodes form class A and update first;
/// `swapped` puts the even nodes in class A instead.
struct RingNetwork {
  std::uint64_t p = 0;
  Q2RNetwork network;
  /// 1 followed by 2p-1 zeros.
  Configuration canonical;
};

RingNetwork build_ring(std::uint64_t p, bool swapped = false);

/// Distinct odd primes joined through their frozen ports so that the
/// canonical orbit has period equal to the product of the primes.
///
/// Ring i occupies nodes [offset_i, offset_i + 2 p_i). Two rings use the
/// four-edge coupler; larger sets form a cycle of rings where every port
/// gains two +1 and two -1 neighbours, padded by one balancer (two frozen
/// 4-cycles) when k is odd.
struct CompositeNetwork {
  std::vector<std::uint64_t> primes;
  Q2RNetwork network;
  std::vector<NodeId> ring_offsets;
  /// True for rings whose update classes are swapped.
  std::vector<bool> ring_swapped;
  std::vector<Edge> couplers;
  /// Nodes that belong to no ring (balancer), empty when k is even.
  std::vector<NodeId> coupler_nodes;
  Configuration canonical;
};

CompositeNetwork build_composite(const std::vector<std::uint64_t>& primes);

struct TorusNetwork {
  std::size_t width = 0;
  std::size_t height = 0;
  Q2RNetwork network;
};

/// Von Neumann torus with checkerboard classes; node (r, c) is r * width + c.
TorusNetwork build_torus(std::size_t width, std::size_t height);

/// Ring ports: node 1 frozen at +1 and node p+1 frozen at -1 (1-based).
std::vector<PortSpin> frozen_ports(const RingNetwork& ring);
std::vector<PortSpin> frozen_ports(const CompositeNetwork& net);

/// Connected bipartite even-degree test graph: a Hamiltonian cycle
/// alternating between the classes plus random extra alternating cycles.
/// `n` must be even and >= 4. No dynamical guarantees.
Q2RNetwork random_bipartite_even(std::size_t n, std::mt19937_64& rng, std::size_t extra_cycles = 3);

Configuration random_configuration(std::size_t n, std::mt19937_64& rng);

}  // namespace q2r
