#pragma once

#include <vector>

#include "dcs/weighted_graph.hpp"

namespace dcs {

// Unweighted k-core numbers by bucket peeling (weights are ignored, topology
// only). Linear in n + m. Isolated vertices get core number 0.
inline std::vector<int> core_numbers(const WeightedGraph& g) {
  const VertexId n = g.vertex_count();
  std::vector<int> deg(n);
  int max_deg = 0;
  for (VertexId u = 0; u < n; ++u) {
    deg[u] = static_cast<int>(g.neighbors(u).size());
    max_deg = std::max(max_deg, deg[u]);
  }

  // Vertices sorted by degree via counting sort; pos[u] tracks u's slot so a
  // degree decrement is a swap toward the front of its bin.
  std::vector<int> bin(max_deg + 2, 0);
  for (VertexId u = 0; u < n; ++u) bin[deg[u] + 1]++;
  for (int d = 1; d < static_cast<int>(bin.size()); ++d) bin[d] += bin[d - 1];
  std::vector<VertexId> order(n);
  std::vector<int> pos(n);
  {
    std::vector<int> next = bin;
    for (VertexId u = 0; u < n; ++u) {
      pos[u] = next[deg[u]]++;
      order[pos[u]] = u;
    }
  }

  std::vector<int> core(n);
  std::vector<int> bin_start = bin;
  for (int idx = 0; idx < n; ++idx) {
    VertexId u = order[idx];
    core[u] = deg[u];
    for (auto [v, w] : g.neighbors(u)) {
      (void)w;
      if (deg[v] > deg[u]) {
        int dv = deg[v];
        int pv = pos[v];
        int pw = bin_start[dv];
        VertexId front = order[pw];
        if (front != v) {
          std::swap(order[pv], order[pw]);
          pos[v] = pw;
          pos[front] = pv;
        }
        bin_start[dv]++;
        deg[v]--;
      }
    }
  }
  return core;
}

}  // namespace dcs
