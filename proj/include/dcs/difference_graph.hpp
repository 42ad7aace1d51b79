#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dcs/errors.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

// The columns of the usual difference-graph summary: vertex count, positive
// and negative edge counts, extreme weights and mean edge weight.
struct GraphStats {
  VertexId n = 0;
  std::size_t m_pos = 0;
  std::size_t m_neg = 0;
  double max_w = 0;
  double min_w = 0;
  double avg_w = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

inline GraphStats compute_stats(const WeightedGraph& g) {
  GraphStats s;
  s.n = g.vertex_count();
  s.m_pos = g.edge_count_pos();
  s.m_neg = g.edge_count_neg();
  if (g.edge_count() == 0) return s;
  s.max_w = -std::numeric_limits<double>::infinity();
  s.min_w = std::numeric_limits<double>::infinity();
  // Kahan sum; the mean is over undirected edges.
  double sum = 0, comp = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (auto [v, w] : g.neighbors(u)) {
      if (u >= v) continue;
      s.max_w = std::max(s.max_w, w);
      s.min_w = std::min(s.min_w, w);
      double y = w - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  s.avg_w = sum / static_cast<double>(g.edge_count());
  return s;
}

// Signed difference graph D together with its positive part D+ and summary
// statistics. D+ keeps exactly the positive-weight edges of D.
class DifferenceGraph {
 public:
  DifferenceGraph() = default;

  // Treat an already-differenced signed graph as D.
  explicit DifferenceGraph(WeightedGraph d, double alpha = 1.0)
      : gd_(std::move(d)), alpha_(alpha) {
    derive();
  }

  const WeightedGraph& gd() const { return gd_; }
  const WeightedGraph& gplus() const { return gplus_; }
  double alpha() const { return alpha_; }
  const GraphStats& stats() const { return stats_; }
  VertexId vertex_count() const { return gd_.vertex_count(); }

 private:
  void derive() {
    std::vector<WeightedEdge> pos;
    pos.reserve(gd_.edge_count_pos());
    for (const auto& e : gd_.edges())
      if (e.w > 0) pos.push_back(e);
    gplus_ = WeightedGraph(gd_.labels(), pos);
    stats_ = compute_stats(gd_);
  }

  WeightedGraph gd_;
  WeightedGraph gplus_;
  double alpha_ = 1.0;
  GraphStats stats_;
};

// D(u,v) = A2(u,v) - alpha * A1(u,v) over the union label universe; exact-zero
// results are dropped. Per-vertex sorted-adjacency merge after remapping both
// graphs into the union id space.
inline DifferenceGraph build_difference(const WeightedGraph& g1, const WeightedGraph& g2,
                                        double alpha = 1.0) {
  if (!(alpha >= 0) || !std::isfinite(alpha))
    throw std::invalid_argument("alpha must be finite and >= 0");

  std::vector<std::string> labels = g1.labels();
  std::vector<VertexId> map2(g2.vertex_count());
  {
    std::unordered_map<std::string, VertexId> index;
    index.reserve(labels.size() * 2);
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    for (VertexId u = 0; u < g2.vertex_count(); ++u) {
      auto it = index.find(g2.label(u));
      if (it == index.end()) {
        map2[u] = static_cast<VertexId>(labels.size());
        index.emplace(g2.label(u), map2[u]);
        labels.push_back(g2.label(u));
      } else {
        map2[u] = it->second;
      }
    }
  }
  const auto n = static_cast<VertexId>(labels.size());

  // Remapped, sorted half-adjacency (u < v in union ids) per union vertex.
  auto half_lists = [n](const WeightedGraph& g, const std::vector<VertexId>* map) {
    std::vector<std::vector<std::pair<VertexId, double>>> lists(n);
    for (const auto& e : g.edges()) {
      VertexId u = map ? (*map)[e.u] : e.u;
      VertexId v = map ? (*map)[e.v] : e.v;
      if (u > v) std::swap(u, v);
      lists[u].emplace_back(v, e.w);
    }
    for (auto& l : lists) std::sort(l.begin(), l.end());
    return lists;
  };
  auto l1 = half_lists(g1, nullptr);
  auto l2 = half_lists(g2, &map2);

  std::vector<WeightedEdge> edges;
  edges.reserve(g1.edge_count() + g2.edge_count());
  for (VertexId u = 0; u < n; ++u) {
    std::size_t i = 0, j = 0;
    while (i < l1[u].size() || j < l2[u].size()) {
      double w;
      VertexId v;
      if (j == l2[u].size() || (i < l1[u].size() && l1[u][i].first < l2[u][j].first)) {
        v = l1[u][i].first;
        w = -alpha * l1[u][i].second;
        ++i;
      } else if (i == l1[u].size() || l2[u][j].first < l1[u][i].first) {
        v = l2[u][j].first;
        w = l2[u][j].second;
        ++j;
      } else {
        v = l1[u][i].first;
        w = l2[u][j].second - alpha * l1[u][i].second;
        ++i;
        ++j;
      }
      if (w != 0.0) edges.push_back({u, v, w});
    }
  }
  return DifferenceGraph(WeightedGraph(std::move(labels), edges), alpha);
}

// Edge-weight remapping. Discretize bands are (lower bound, mapped value)
// pairs with strictly increasing bounds; a weight maps through the last band
// whose bound does not exceed it, and to 0 (edge dropped) below all bands.
struct WeightTransform {
  enum class Kind { Identity, ClampMax, Discretize };

  Kind kind = Kind::Identity;
  double cap = 0;
  std::vector<std::pair<double, double>> bands;

  static WeightTransform identity() { return {}; }

  static WeightTransform clamp_max(double cap) {
    if (!std::isfinite(cap)) throw BadTransform("clamp cap must be finite");
    return {Kind::ClampMax, cap, {}};
  }

  static WeightTransform discretize(std::vector<std::pair<double, double>> bands) {
    for (std::size_t i = 1; i < bands.size(); ++i)
      if (!(bands[i - 1].first < bands[i].first))
        throw BadTransform("discretize bands overlap");
    return {Kind::Discretize, 0, std::move(bands)};
  }

  // The co-authorship banding: >=5 -> 2, [2,5) -> 1, (0,2) dropped,
  // (-4,0) -> -1, <=-4 -> -2. The -1 band is open at -4.
  static WeightTransform discretize_dblp() {
    return discretize({{-std::numeric_limits<double>::infinity(), -2},
                       {std::nextafter(-4.0, 0.0), -1},
                       {0.0, 0},
                       {2.0, 1},
                       {5.0, 2}});
  }

  double apply(double w) const {
    switch (kind) {
      case Kind::Identity:
        return w;
      case Kind::ClampMax:
        return std::min(w, cap);
      case Kind::Discretize: {
        auto it = std::upper_bound(bands.begin(), bands.end(), w,
                                   [](double x, const auto& b) { return x < b.first; });
        if (it == bands.begin()) return 0.0;
        return std::prev(it)->second;
      }
    }
    return w;
  }
};

inline DifferenceGraph transform_weights(const DifferenceGraph& dg, const WeightTransform& t) {
  std::vector<WeightedEdge> edges;
  edges.reserve(dg.gd().edge_count());
  for (const auto& e : dg.gd().edges()) {
    double w = t.apply(e.w);
    if (w != 0.0) edges.push_back({e.u, e.v, w});
  }
  return DifferenceGraph(WeightedGraph(dg.gd().labels(), edges), dg.alpha());
}

// Reverses the contrast direction (emerging <-> disappearing).
inline DifferenceGraph flip_signs(const DifferenceGraph& dg) {
  std::vector<WeightedEdge> edges;
  edges.reserve(dg.gd().edge_count());
  for (const auto& e : dg.gd().edges()) edges.push_back({e.u, e.v, -e.w});
  return DifferenceGraph(WeightedGraph(dg.gd().labels(), edges), dg.alpha());
}

}  // namespace dcs
