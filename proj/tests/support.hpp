#pragma once

#include "oracle.hpp"
#include "q2r/core.hpp"

namespace test_support {

inline oracle::Adj oracle_adjacency(const q2r::Q2RNetwork& net) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : net.edges()) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return oracle::adjacency(static_cast<int>(net.size()), edges);
}

inline std::vector<int> oracle_labels(const q2r::Q2RNetwork& net) {
  std::vector<int> labels;
  for (q2r::NodeId v = 0; v < net.size(); ++v) labels.push_back(net.side(v) == q2r::Side::A ? 0 : 1);
  return labels;
}

inline oracle::Spins to_spins(const q2r::Configuration& x) { return oracle::from_bits(x.to_string()); }

}  // namespace test_support
