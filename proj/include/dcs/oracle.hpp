#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dcs/density.hpp"
#include "dcs/difference_graph.hpp"
#include "dcs/embedding.hpp"
#include "dcs/errors.hpp"

namespace dcs {

struct OracleResult {
  double optimum = 0;
  std::vector<VertexId> witness_set;            // DCSAD witness
  std::map<VertexId, double> witness_weights;   // DCSGA witness
  std::uint64_t instances_enumerated = 0;
  std::uint64_t singular_supports = 0;          // faces skipped to uniform fallback
};

namespace detail {

// In-place Gaussian elimination with partial pivoting; false when singular.
inline bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double factor = a[r][col] / a[col][col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return true;
}

// Lexicographic order on sorted id lists.
inline bool lex_less(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// Exact DCSAD by full subset enumeration: max over non-empty S of
// rho_D(S) = W_D(S)/|S|. The witness is minimum cardinality, then
// lexicographically smallest, among the optima.
inline OracleResult oracle_dcsad(const DifferenceGraph& dg, int limit_n = 15) {
  const WeightedGraph& g = dg.gd();
  const int n = g.vertex_count();
  if (n == 0) throw EmptyGraph("oracle_dcsad: empty graph");
  if (n > limit_n || n > 25) throw TooLarge("oracle_dcsad: n exceeds the enumeration limit");

  // edge_sum[mask] = sum of within-mask edge weights (each edge once).
  const std::uint32_t full = 1u << n;
  std::vector<double> edge_sum(full, 0.0);
  OracleResult out;
  out.optimum = -std::numeric_limits<double>::infinity();
  std::vector<VertexId> best;
  int best_size = n + 1;

  for (std::uint32_t mask = 1; mask < full; ++mask) {
    int v = std::countr_zero(mask);
    std::uint32_t rest = mask & (mask - 1);
    double extra = 0;
    for (auto [u, w] : g.neighbors(v))
      if ((rest >> u) & 1u) extra += w;
    edge_sum[mask] = edge_sum[rest] + extra;

    int size = std::popcount(mask);
    double density = 2.0 * edge_sum[mask] / static_cast<double>(size);
    if (density > out.optimum ||
        (density == out.optimum && size < best_size)) {
      out.optimum = density;
      best_size = size;
      best.clear();
      for (int u = 0; u < n; ++u)
        if ((mask >> u) & 1u) best.push_back(u);
    } else if (density == out.optimum && size == best_size) {
      std::vector<VertexId> cand;
      for (int u = 0; u < n; ++u)
        if ((mask >> u) & 1u) cand.push_back(u);
      if (detail::lex_less(cand, best)) best = cand;
    }
  }
  out.witness_set = best;
  out.instances_enumerated = full - 1;
  return out;
}

namespace detail {

// Stationary point of f on the face spanned by `support`:
// (D x)_u = lambda/2 on the support, sum x = 1. Returns the weights when the
// system is regular and strictly positive on the support.
inline std::optional<std::map<VertexId, double>> face_stationary_point(
    const WeightedGraph& g, const std::vector<VertexId>& support) {
  const std::size_t k = support.size();
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> rhs(k + 1, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c)
      a[r][c] = g.weight(support[r], support[c]);
    a[r][k] = -0.5;
  }
  for (std::size_t c = 0; c < k; ++c) a[k][c] = 1.0;
  rhs[k] = 1.0;
  if (!solve_dense(a, rhs)) return std::nullopt;
  std::map<VertexId, double> weights;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(rhs[i] > 1e-10)) return std::nullopt;
    weights[support[i]] = rhs[i];
  }
  return weights;
}

}  // namespace detail

// Exact DCSGA by face enumeration: an optimum of a quadratic over the simplex
// is stationary on the relative interior of some face, so solving the
// stationarity system for every support (plus all one-hot points) covers the
// global maximum. Singular faces fall back to a uniform evaluation.
inline OracleResult oracle_dcsga(const DifferenceGraph& dg, int limit_n = 12) {
  const WeightedGraph& g = dg.gd();
  const int n = g.vertex_count();
  if (n == 0) throw EmptyGraph("oracle_dcsga: empty graph");
  if (n > limit_n || n > 25) throw TooLarge("oracle_dcsga: n exceeds the enumeration limit");

  OracleResult out;
  out.optimum = -std::numeric_limits<double>::infinity();
  const std::uint32_t full = 1u << n;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<VertexId> support;
    for (int u = 0; u < n; ++u)
      if ((mask >> u) & 1u) support.push_back(u);
    ++out.instances_enumerated;

    std::map<VertexId, double> weights;
    if (support.size() == 1) {
      weights[support[0]] = 1.0;
    } else if (auto sol = detail::face_stationary_point(g, support)) {
      weights = std::move(*sol);
    } else {
      ++out.singular_supports;
      double share = 1.0 / static_cast<double>(support.size());
      for (VertexId u : support) weights[u] = share;
    }
    double f = affinity_value(g, weights);
    if (f > out.optimum) {
      out.optimum = f;
      out.witness_weights = std::move(weights);
    }
  }
  return out;
}

// Max of f over embeddings supported inside a positive clique; the same face
// enumeration restricted to clique subsets.
inline double oracle_clique_affinity(const DifferenceGraph& dg, std::span<const VertexId> clique) {
  if (!is_positive_clique(dg.gd(), clique))
    throw NotAClique("oracle_clique_affinity: set is not a positive clique");
  auto sorted = detail::checked_sorted_set(dg.gd(), clique, "oracle_clique_affinity");
  const std::size_t k = sorted.size();
  if (k > 20) throw TooLarge("oracle_clique_affinity: clique too large to enumerate");

  double best = 0;  // one-hot points give 0
  const std::uint32_t full = 1u << k;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<VertexId> support;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1u) support.push_back(sorted[i]);
    std::map<VertexId, double> weights;
    if (support.size() == 1) {
      weights[support[0]] = 1.0;
    } else if (auto sol = detail::face_stationary_point(dg.gd(), support)) {
      weights = std::move(*sol);
    } else {
      double share = 1.0 / static_cast<double>(support.size());
      for (VertexId u : support) weights[u] = share;
    }
    best = std::max(best, affinity_value(dg.gd(), weights));
  }
  return best;
}

}  // namespace dcs
