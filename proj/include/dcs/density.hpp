#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <span>
#include <unordered_set>
#include <vector>

#include "dcs/difference_graph.hpp"
#include "dcs/embedding.hpp"
#include "dcs/errors.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

namespace detail {

inline std::vector<VertexId> checked_sorted_set(const WeightedGraph& g,
                                                std::span<const VertexId> s,
                                                const char* op) {
  if (s.empty()) throw EmptySet(std::string(op) + ": empty vertex set");
  std::vector<VertexId> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (VertexId u : sorted)
    if (u < 0 || u >= g.vertex_count()) throw std::out_of_range(std::string(op) + ": bad vertex id");
  return sorted;
}

}  // namespace detail

// Total degree of S: every within-S undirected edge counts twice.
inline double total_degree_within(const WeightedGraph& g, std::span<const VertexId> s) {
  auto sorted = detail::checked_sorted_set(g, s, "total_degree_within");
  std::unordered_set<VertexId> in(sorted.begin(), sorted.end());
  double sum = 0;
  for (VertexId u : sorted)
    for (auto [v, w] : g.neighbors(u))
      if (in.count(v)) sum += w;
  return sum;
}

inline double average_degree(const WeightedGraph& g, std::span<const VertexId> s) {
  return total_degree_within(g, s) / static_cast<double>(detail::checked_sorted_set(g, s, "average_degree").size());
}

inline double edge_density(const WeightedGraph& g, std::span<const VertexId> s) {
  double k = static_cast<double>(detail::checked_sorted_set(g, s, "edge_density").size());
  return total_degree_within(g, s) / (k * k);
}

inline double average_degree_diff(const DifferenceGraph& dg, std::span<const VertexId> s) {
  return average_degree(dg.gd(), s);
}

inline double edge_density_diff(const DifferenceGraph& dg, std::span<const VertexId> s) {
  return edge_density(dg.gd(), s);
}

// f_D(x) = x^T D x, recomputed from scratch. Rejects points that drifted off
// the simplex.
inline double graph_affinity(const WeightedGraph& g, const Embedding& x) {
  if (std::abs(x.mass_sum() - 1.0) > kSimplexTol)
    throw BadEmbedding("graph_affinity: point is off the simplex");
  return affinity_value(g, x.weights());
}

inline double graph_affinity_diff(const DifferenceGraph& dg, const Embedding& x) {
  return graph_affinity(dg.gd(), x);
}

// Components of the induced subgraph G(S); edges of either sign connect.
// Each component is sorted by id and the list is sorted by smallest member.
inline std::vector<std::vector<VertexId>> connected_components(const WeightedGraph& g,
                                                               std::span<const VertexId> s) {
  auto sorted = detail::checked_sorted_set(g, s, "connected_components");
  std::unordered_set<VertexId> pending(sorted.begin(), sorted.end());
  std::vector<std::vector<VertexId>> comps;
  for (VertexId start : sorted) {
    if (!pending.count(start)) continue;
    std::vector<VertexId> comp;
    std::deque<VertexId> queue{start};
    pending.erase(start);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (pending.count(v)) {
          pending.erase(v);
          queue.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  // Discovery from ascending start ids already orders components by their
  // smallest member.
  return comps;
}

inline std::vector<std::vector<VertexId>> connected_components(const DifferenceGraph& dg,
                                                               std::span<const VertexId> s) {
  return connected_components(dg.gd(), s);
}

inline bool is_connected(const WeightedGraph& g, std::span<const VertexId> s) {
  return connected_components(g, s).size() == 1;
}

// Every pair inside S is an edge of positive weight. O(|S|^2) pair checks.
inline bool is_positive_clique(const WeightedGraph& g, std::span<const VertexId> s) {
  auto sorted = detail::checked_sorted_set(g, s, "is_positive_clique");
  for (std::size_t a = 0; a < sorted.size(); ++a)
    for (std::size_t b = a + 1; b < sorted.size(); ++b)
      if (!(g.weight(sorted[a], sorted[b]) > 0)) return false;
  return true;
}

}  // namespace dcs
