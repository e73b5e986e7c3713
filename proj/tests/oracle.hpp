#pragma once

// Deliberately naive reference dynamics for cross-checking the library:
// plain spin vectors, adjacency rebuilt from an edge list, blocks given as
// class labels.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using Spins = std::vector<int>;
using Adj = std::vector<std::vector<int>>;

inline Adj adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  Adj adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

inline Spins from_bits(const std::string& bits) {
  Spins s;
  for (char c : bits) s.push_back(c == '1' ? 1 : -1);
  return s;
}

inline std::string to_bits(const Spins& s) {
  std::string out;
  for (int v : s) out += v > 0 ? '1' : '0';
  return out;
}

/// Nodes whose label equals `label` update together on the old state.
inline Spins half(const Adj& adj, const Spins& x, const std::vector<int>& labels, int label) {
  Spins y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (labels[i] != label) continue;
    int sum = 0;
    for (int j : adj[i]) sum += x[j];
    if (sum == 0) y[i] = -x[i];
  }
  return y;
}

/// (label 0)(label 1) step; a single label value gives the parallel step.
inline Spins step(const Adj& adj, const Spins& x, const std::vector<int>& labels, int blocks = 2) {
  Spins y = x;
  for (int b = 0; b < blocks; ++b) y = half(adj, y, labels, b);
  return y;
}

inline std::int64_t energy(const Adj& adj, const Spins& x) {
  std::int64_t e = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (int j : adj[i]) {
      if (static_cast<std::size_t>(j) > i) e -= x[i] * x[j];
    }
  }
  return e;
}

}  // namespace oracle
