#pragma once

#include <utility>
#include <vector>

#include "seedrank/rng.hpp"
#include "seedrank/sbm.hpp"

namespace seedrank::testing {

inline Graph undirected(std::int64_t n,
                        std::vector<std::pair<NodeId, NodeId>> edges,
                        std::vector<int> blocks = {}) {
  if (blocks.empty()) blocks.assign(static_cast<std::size_t>(n), 0);
  return Graph::from_edges(n, edges, std::move(blocks), false);
}

/// G(n, p) with independent coin flips, undirected unless `directed`.
inline Graph random_graph(std::int64_t n, double p, Rng& rng,
                          bool directed = false) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && rng.uniform() < p) {
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
      }
    }
  }
  return Graph::from_edges(n, edges, std::vector<int>(static_cast<std::size_t>(n), 0),
                           directed);
}

/// Dense 0/1 adjacency, self-loops dropped.
inline std::vector<std::vector<int>> adjacency(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : g.out_neighbors(static_cast<NodeId>(u))) {
      if (v != u) a[u][v] = 1;
    }
  }
  return a;
}

inline bool connected(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.out_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace seedrank::testing
