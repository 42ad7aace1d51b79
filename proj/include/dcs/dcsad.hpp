#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "dcs/density.hpp"
#include "dcs/difference_graph.hpp"
#include "dcs/errors.hpp"
#include "dcs/indexed_min_queue.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

enum class Provenance { MaxEdge, GreedyGd, GreedyGplus, ComponentRefined, SingleVertex };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::MaxEdge: return "max-edge";
    case Provenance::GreedyGd: return "greedy-on-G_D";
    case Provenance::GreedyGplus: return "greedy-on-G_D+";
    case Provenance::ComponentRefined: return "component-refined";
    case Provenance::SingleVertex: return "single-vertex";
  }
  return "?";
}

struct SubsetResult {
  std::vector<VertexId> vertices;  // sorted ascending
  double density = 0;              // average-degree difference of `vertices`
  std::optional<double> ratio_beta;
  bool is_connected = false;
  bool is_positive_clique = false;
  Provenance provenance = Provenance::SingleVertex;
};

// Iteratively removes the minimum-degree vertex (signed degrees; ties by
// ascending id) and returns the best prefix by average degree. The best set
// is replaced only on strict improvement, so the earliest and largest among
// equal-density prefixes is kept. O((m+n) log n) with an indexed min queue.
template <class Queue = SegmentTreeMinQueue>
std::vector<VertexId> greedy_peel(const WeightedGraph& g) {
  const VertexId n = g.vertex_count();
  if (n == 0) throw EmptyGraph("greedy_peel: empty graph");

  std::vector<double> deg(n);
  double total = 0;
  for (VertexId u = 0; u < n; ++u) {
    deg[u] = g.degree(u);
    total += deg[u];
  }

  Queue queue{std::span<const double>(deg)};
  std::vector<VertexId> removal_order;
  removal_order.reserve(n);

  double best_density = total / static_cast<double>(n);
  std::size_t best_step = 0;  // number of removals before the best prefix

  for (VertexId remaining = n; remaining >= 1; --remaining) {
    double density = total / static_cast<double>(remaining);
    if (density > best_density) {
      best_density = density;
      best_step = removal_order.size();
    }
    int i = queue.top();
    queue.remove(i);
    removal_order.push_back(i);
    total -= 2.0 * deg[i];
    for (auto [v, w] : g.neighbors(i)) {
      if (queue.active(v)) {
        deg[v] -= w;
        queue.update(v, deg[v]);
      }
    }
  }

  std::vector<VertexId> best(removal_order.begin() + best_step, removal_order.end());
  std::sort(best.begin(), best.end());
  return best;
}

namespace detail {

// Max-weight edge with ties broken by lexicographic (u,v), u < v.
inline std::optional<WeightedEdge> max_positive_edge(const WeightedGraph& g) {
  std::optional<WeightedEdge> best;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (auto [v, w] : g.neighbors(u)) {
      if (u >= v || w <= 0) continue;
      if (!best || w > best->w) best = WeightedEdge{u, v, w};
    }
  }
  return best;
}

}  // namespace detail

// DCSGreedy: best of the max-edge pair and greedy peels of G_D and G_D+,
// refined to its best connected component, with the data-dependent ratio
// certificate beta = 2 * rho_{D+}(S2) / rho_D(S).
template <class Queue = SegmentTreeMinQueue>
SubsetResult dcs_greedy(const DifferenceGraph& dg) {
  const WeightedGraph& gd = dg.gd();
  if (gd.vertex_count() == 0) throw EmptyGraph("dcs_greedy: empty graph");

  SubsetResult out;
  if (gd.edge_count_pos() == 0) {
    // No positive edge: any single vertex is optimal with density 0. The
    // lowest id keeps runs reproducible.
    out.vertices = {0};
    out.density = 0;
    out.is_connected = true;
    out.is_positive_clique = true;
    out.provenance = Provenance::SingleVertex;
    return out;
  }

  auto max_edge = *detail::max_positive_edge(gd);
  std::vector<VertexId> s0{max_edge.u, max_edge.v};
  std::vector<VertexId> s1 = greedy_peel<Queue>(gd);
  std::vector<VertexId> s2 = greedy_peel<Queue>(dg.gplus());

  struct Candidate {
    const std::vector<VertexId>* set;
    double density;
    Provenance provenance;
  };
  Candidate candidates[] = {
      {&s0, average_degree(gd, s0), Provenance::MaxEdge},
      {&s1, average_degree(gd, s1), Provenance::GreedyGd},
      {&s2, average_degree(gd, s2), Provenance::GreedyGplus},
  };
  const Candidate* winner = &candidates[0];
  for (const auto& c : candidates)
    if (c.density > winner->density) winner = &c;

  out.vertices = *winner->set;
  out.density = winner->density;
  out.provenance = winner->provenance;

  auto comps = connected_components(gd, out.vertices);
  if (comps.size() > 1) {
    const std::vector<VertexId>* best_comp = nullptr;
    double best_density = 0;
    for (const auto& comp : comps) {
      double d = average_degree(gd, comp);
      if (!best_comp || d > best_density) {
        best_comp = &comp;
        best_density = d;
      }
    }
    out.vertices = *best_comp;
    out.density = best_density;
    out.provenance = Provenance::ComponentRefined;
  }

  out.is_connected = is_connected(gd, out.vertices);
  out.is_positive_clique = is_positive_clique(gd, out.vertices);
  out.ratio_beta = 2.0 * average_degree(dg.gplus(), s2) / out.density;
  return out;
}

// Test-harness glue: optimality gap against an exact oracle value. Only
// defined for positive result densities; must never exceed ratio_beta.
inline double oracle_gap(const DifferenceGraph& dg, const SubsetResult& result,
                         double oracle_density) {
  (void)dg;
  if (!(result.density > 0)) throw UndefinedGap("oracle_gap: result density is not positive");
  return oracle_density / result.density;
}

}  // namespace dcs
