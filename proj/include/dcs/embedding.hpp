#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "dcs/errors.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

inline constexpr double kSimplexTol = 1e-12;

// Evaluates x^T A x from scratch for a sparse point given as vertex -> mass.
inline double affinity_value(const WeightedGraph& g,
                             const std::map<VertexId, double>& weights) {
  double f = 0;
  for (const auto& [u, xu] : weights) {
    double dot = 0;
    for (auto [v, w] : g.neighbors(u)) {
      auto it = weights.find(v);
      if (it != weights.end()) dot += w * it->second;
    }
    f += xu * dot;
  }
  return f;
}

// A sparse point on the simplex: only strictly positive coordinates are
// stored. Caches f(x) = x^T A x and (Ax)_u for every vertex u adjacent to the
// support, against the graph the point was built for. Mutating helpers keep
// the caches incremental; rebuild() recomputes them exactly.
class Embedding {
 public:
  Embedding() = default;

  static Embedding one_hot(const WeightedGraph& g, VertexId u) {
    if (u < 0 || u >= g.vertex_count()) throw std::out_of_range("one_hot: bad vertex id");
    Embedding x;
    x.weights_[u] = 1.0;
    x.rebuild(g);
    return x;
  }

  static Embedding uniform(const WeightedGraph& g, std::span<const VertexId> s) {
    if (s.empty()) throw EmptySet("uniform: empty support");
    Embedding x;
    for (VertexId u : s) {
      if (u < 0 || u >= g.vertex_count()) throw std::out_of_range("uniform: bad vertex id");
      x.weights_[u] = 0;
    }
    double share = 1.0 / static_cast<double>(x.weights_.size());
    for (auto& [u, w] : x.weights_) w = share;
    x.rebuild(g);
    return x;
  }

  static Embedding from_weights(const WeightedGraph& g, const std::map<VertexId, double>& w) {
    Embedding x;
    double sum = 0;
    for (const auto& [u, xu] : w) {
      if (u < 0 || u >= g.vertex_count()) throw std::out_of_range("from_weights: bad vertex id");
      if (!std::isfinite(xu) || xu < 0) throw BadEmbedding("negative or non-finite mass");
      if (xu > 0) x.weights_[u] = xu;
      sum += xu;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) throw BadEmbedding("masses do not sum to 1");
    if (x.weights_.empty()) throw BadEmbedding("empty support");
    x.rebuild(g);
    return x;
  }

  const std::map<VertexId, double>& weights() const { return weights_; }

  double weight(VertexId u) const {
    auto it = weights_.find(u);
    return it == weights_.end() ? 0.0 : it->second;
  }

  std::vector<VertexId> support() const {
    std::vector<VertexId> s;
    s.reserve(weights_.size());
    for (const auto& [u, w] : weights_) s.push_back(u);
    return s;
  }

  std::size_t support_size() const { return weights_.size(); }

  double f() const { return f_; }

  // Cached (Ax)_u; zero for vertices with no neighbor in the support.
  double dx(VertexId u) const {
    auto it = dx_.find(u);
    return it == dx_.end() ? 0.0 : it->second;
  }

  double gradient(VertexId u) const { return 2.0 * dx(u); }

  double mass_sum() const {
    double s = 0;
    for (const auto& [u, w] : weights_) s += w;
    return s;
  }

  // Moves the (i, j) pair to (new_xi, C - new_xi), keeping caches current in
  // O(|N(i)| + |N(j)|) plus a support sweep for f.
  void shift_pair(const WeightedGraph& g, VertexId i, VertexId j, double new_xi) {
    double xi = weight(i), xj = weight(j);
    double c = xi + xj;
    double nxi = new_xi, nxj = c - new_xi;
    if (nxi <= 0) { nxi = 0; nxj = c; }
    if (nxj <= 0) { nxj = 0; nxi = c; }
    apply_delta(g, i, nxi - xi);
    apply_delta(g, j, nxj - xj);
    set_mass(i, nxi);
    set_mass(j, nxj);
    recompute_f();
  }

  // Generic sparse reassignment used by the expansion stage; deltas may touch
  // vertices outside the current support.
  void add_scaled(const WeightedGraph& g, const std::map<VertexId, double>& direction,
                  double step) {
    for (const auto& [u, du] : direction) {
      double nu = weight(u) + step * du;
      if (nu < 0) nu = 0;
      apply_delta(g, u, nu - weight(u));
      set_mass(u, nu);
    }
    recompute_f();
  }

  void normalize(const WeightedGraph& g) {
    double s = mass_sum();
    if (s <= 0) throw BadEmbedding("normalize: zero total mass");
    for (auto& [u, w] : weights_) w /= s;
    rebuild(g);
  }

  // Cached (Ax)_u for every vertex adjacent to the support (and the support
  // itself); exactly the candidate set the expansion stage scans.
  const std::map<VertexId, double>& dx_entries() const { return dx_; }

  void rebuild(const WeightedGraph& g) {
    dx_.clear();
    for (const auto& [u, xu] : weights_) {
      dx_.emplace(u, 0.0);
      for (auto [v, w] : g.neighbors(u)) dx_[v] += w * xu;
    }
    recompute_f();
  }

 private:
  void apply_delta(const WeightedGraph& g, VertexId u, double delta) {
    if (delta == 0) return;
    for (auto [v, w] : g.neighbors(u)) dx_[v] += w * delta;
  }

  void set_mass(VertexId u, double m) {
    if (m > 0)
      weights_[u] = m;
    else
      weights_.erase(u);
  }

  void recompute_f() {
    double f = 0;
    for (const auto& [u, xu] : weights_) f += xu * dx(u);
    f_ = f;
  }

  std::map<VertexId, double> weights_;
  std::map<VertexId, double> dx_;
  double f_ = 0;
};

}  // namespace dcs
