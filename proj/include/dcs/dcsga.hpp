#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "dcs/density.hpp"
#include "dcs/difference_graph.hpp"
#include "dcs/embedding.hpp"
#include "dcs/errors.hpp"
#include "dcs/solver_config.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

// Partial derivative of f(x) = x^T A x: grad_u = 2 (A x)_u, from scratch.
inline double gradient(const WeightedGraph& g, const Embedding& x, VertexId u) {
  double dot = 0;
  for (auto [v, w] : g.neighbors(u)) dot += w * x.weight(v);
  return 2.0 * dot;
}

inline double gradient(const DifferenceGraph& dg, const Embedding& x, VertexId u) {
  return gradient(dg.gd(), x, u);
}

// max(0, max_{k in s, x_k<1} grad_k - min_{k in s, x_k>0} grad_k).
// Zero means x is a local KKT point on s; with s = V, a KKT point.
inline double kkt_residual(const WeightedGraph& g, const Embedding& x,
                           std::span<const VertexId> s) {
  auto sorted = detail::checked_sorted_set(g, s, "kkt_residual");
  for (const auto& [u, xu] : x.weights()) {
    (void)xu;
    if (!std::binary_search(sorted.begin(), sorted.end(), u))
      throw std::invalid_argument("kkt_residual: support not contained in s");
  }
  std::map<VertexId, double> dx;
  for (const auto& [u, xu] : x.weights())
    for (auto [v, w] : g.neighbors(u)) dx[v] += w * xu;

  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (VertexId k : sorted) {
    double xk = x.weight(k);
    auto it = dx.find(k);
    double dk = it == dx.end() ? 0.0 : it->second;
    if (xk < 1.0) hi = std::max(hi, dk);
    if (xk > 0.0) lo = std::min(lo, dk);
  }
  if (!std::isfinite(hi) || !std::isfinite(lo)) return 0.0;
  return std::max(0.0, 2.0 * (hi - lo));
}

inline double kkt_residual(const DifferenceGraph& dg, const Embedding& x,
                           std::span<const VertexId> s) {
  return kkt_residual(dg.gd(), x, s);
}

namespace detail {

inline std::vector<VertexId> all_vertices(const WeightedGraph& g) {
  std::vector<VertexId> v(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) v[u] = u;
  return v;
}

// The single-variable maximization behind one pair move: with x_i + x_j = C
// fixed, g(t) = -D(i,j) t^2 + B t (+ const) over t in [0, C]. Returns the
// new x_i; argmax ties resolve toward the larger value (keeping i).
inline double solve_pair(const WeightedGraph& g, const Embedding& x, VertexId i, VertexId j) {
  if (i == j) throw std::invalid_argument("solve_pair: i == j");
  double xi = x.weight(i), xj = x.weight(j);
  double c = xi + xj;
  if (!(c > 0)) throw NoMass("pair update with zero combined mass");
  double dij = g.weight(i, j);
  double bi = x.dx(i) - dij * xj;
  double bj = x.dx(j) - dij * xi;

  if (dij == 0.0) {
    if (bi > bj) return c;
    if (bi < bj) return 0.0;
    return xi;  // flat objective, leave the pair alone
  }

  double big_b = dij * c + bi - bj;
  double r = big_b / (2.0 * dij);
  auto value = [&](double t) { return -dij * t * t + big_b * t; };

  double best_t = c;
  double best_v = value(c);
  if (r >= 0.0 && r <= c && value(r) > best_v) {
    best_t = r;
    best_v = value(r);
  }
  if (value(0.0) > best_v) best_t = 0.0;
  return best_t;
}

}  // namespace detail

// One 2-coordinate move (Eq.-9 style case split); f never decreases.
inline Embedding two_coord_update(const WeightedGraph& g, const Embedding& x, VertexId i,
                                  VertexId j) {
  double new_xi = detail::solve_pair(g, x, i, j);
  Embedding out = x;
  out.shift_pair(g, i, j, new_xi);
  return out;
}

inline Embedding two_coord_update(const DifferenceGraph& dg, const Embedding& x, VertexId i,
                                  VertexId j) {
  return two_coord_update(dg.gd(), x, i, j);
}

struct CdResult {
  Embedding x;
  bool converged = false;
  long iterations = 0;
};

// 2-coordinate descent restricted to s: repeatedly moves mass from the
// minimum-gradient positive coordinate to the maximum-gradient coordinate
// (ties by ascending id) until the gradient gap on s falls below
// eps_scale/|s| or the iteration cap is hit.
inline CdResult coordinate_descent(const WeightedGraph& g, const Embedding& x0,
                                   std::span<const VertexId> s, const SolverConfig& cfg) {
  cfg.validate();
  auto sorted = detail::checked_sorted_set(g, s, "coordinate_descent");
  for (const auto& [u, xu] : x0.weights()) {
    (void)xu;
    if (!std::binary_search(sorted.begin(), sorted.end(), u))
      throw std::invalid_argument("coordinate_descent: support not contained in s");
  }

  CdResult res;
  res.x = x0;
  Embedding& x = res.x;
  const double tol = cfg.shrink_tol(sorted.size());

  while (res.iterations < cfg.max_shrink_iters) {
    VertexId i = -1, j = -1;
    double gi = 0, gj = 0;
    for (VertexId k : sorted) {
      double xk = x.weight(k);
      double dk = x.dx(k);
      if (xk < 1.0 && (i < 0 || dk > gi)) { i = k; gi = dk; }
      if (xk > 0.0 && (j < 0 || dk < gj)) { j = k; gj = dk; }
    }
    if (i < 0 || j < 0 || i == j || 2.0 * (gi - gj) <= tol) {
      res.converged = true;
      break;
    }
    double before = x.f();
    double new_xi = detail::solve_pair(g, x, i, j);
    if (new_xi == x.weight(i)) break;  // numerically stuck; report honestly
    x.shift_pair(g, i, j, new_xi);
    if (cfg.audit) cfg.audit->record(before, x.f());
    ++res.iterations;
  }
  x.normalize(g);
  return res;
}

inline CdResult coordinate_descent(const DifferenceGraph& dg, const Embedding& x0,
                                   std::span<const VertexId> s, const SolverConfig& cfg) {
  return coordinate_descent(dg.gd(), x0, s, cfg);
}

struct ExpandResult {
  enum class Kind { Accepted, Converged };
  Kind kind = Kind::Converged;
  Embedding x;
  bool z_empty = false;     // converged because no vertex beats lambda
  long guard_rejections = 0;  // step candidates the improvement guard refused
};

// Expansion stage: adds mass along b (support coordinates shed -x_i*s, the
// improving set Z = {i : grad_i > lambda} gains gamma_i = (Ax)_i - f) with the
// analytic step tau, guarded by an actual-improvement check with halving.
inline ExpandResult expansion_step(const WeightedGraph& g, const Embedding& x,
                                   const SolverConfig& cfg) {
  cfg.validate();
  ExpandResult res;
  res.x = x;
  const double f = x.f();

  // Z per the gradient test; only support-adjacent vertices can have a
  // positive gradient, except when f < 0 where far vertices (gradient 0)
  // qualify as well.
  std::map<VertexId, double> gamma;
  if (f >= 0) {
    for (const auto& [v, dxv] : x.dx_entries())
      if (dxv - f > 0) gamma.emplace(v, dxv - f);
  } else {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (x.dx(v) - f > 0) gamma.emplace(v, x.dx(v) - f);
  }
  if (gamma.empty()) {
    res.z_empty = true;
    return res;
  }

  double s = 0, zeta = 0, omega = 0;
  for (const auto& [i, gi] : gamma) {
    s += gi;
    zeta += gi * gi;
    for (auto [v, w] : g.neighbors(i)) {
      auto it = gamma.find(v);
      if (it != gamma.end()) omega += gi * it->second * w;
    }
  }
  double a = f * s * s + 2.0 * s * zeta - omega;
  double tau = (a <= 0) ? 1.0 / s : std::min(1.0 / s, zeta / a);

  std::map<VertexId, double> direction;
  for (const auto& [u, xu] : x.weights()) direction[u] = -xu * s;
  for (const auto& [i, gi] : gamma) direction[i] = gi;  // wins on overlap

  for (int attempt = 0; attempt <= cfg.expand_halvings; ++attempt) {
    Embedding cand = x;
    cand.add_scaled(g, direction, tau);
    cand.normalize(g);
    if (cand.f() > f + cfg.expand_guard) {
      if (cfg.audit) cfg.audit->record(f, cand.f());
      res.kind = ExpandResult::Kind::Accepted;
      res.x = std::move(cand);
      return res;
    }
    ++res.guard_rejections;
    tau *= 0.5;
  }
  return res;  // guard exhausted; treat as converged
}

inline ExpandResult expansion_step(const DifferenceGraph& dg, const Embedding& x,
                                   const SolverConfig& cfg) {
  return expansion_step(dg.gd(), x, cfg);
}

struct SeaResult {
  Embedding x;
  bool converged = false;
  int rounds = 0;
  long guard_rejections = 0;
};

// Shrink-and-expand driver: alternate coordinate descent on the current
// support with expansion steps until no vertex improves on lambda.
inline SeaResult seacd(const WeightedGraph& g, const Embedding& x0, const SolverConfig& cfg) {
  cfg.validate();
  SeaResult res;
  res.x = x0;
  while (res.rounds < cfg.max_sea_rounds) {
    ++res.rounds;
    auto cd = coordinate_descent(g, res.x, res.x.support(), cfg);
    res.x = std::move(cd.x);
    if (!cd.converged) return res;  // shrink cap hit; flagged not converged

    auto ex = expansion_step(g, res.x, cfg);
    res.guard_rejections += ex.guard_rejections;
    if (ex.kind == ExpandResult::Kind::Converged) {
      if (ex.z_empty) {
        res.converged = true;
      } else {
        // The guard gave up on a mathematically improving direction; certify
        // against the actual residual before claiming convergence.
        auto all = detail::all_vertices(g);
        res.converged =
            kkt_residual(g, res.x, all) <= cfg.shrink_tol(res.x.support_size());
      }
      return res;
    }
    res.x = std::move(ex.x);
  }
  return res;  // round cap hit
}

inline SeaResult seacd(const DifferenceGraph& dg, const Embedding& x0, const SolverConfig& cfg) {
  return seacd(dg.gd(), x0, cfg);
}

// Turns a KKT point into a positive-clique solution without decreasing f:
// repeatedly resolves the first support pair lacking a positive edge (merge
// on a zero weight, convex endpoint on a negative one) and re-descends on the
// shrunken support.
inline Embedding refine_to_clique(const WeightedGraph& g, const Embedding& x,
                                  const SolverConfig& cfg, bool require_kkt = true) {
  cfg.validate();
  if (require_kkt) {
    auto sup = x.support();
    if (kkt_residual(g, x, sup) > cfg.shrink_tol(sup.size()) + 1e-9)
      throw NotAKKTPoint("refine_to_clique: input is not a KKT point within tolerance");
  }

  Embedding y = x;
  for (;;) {
    auto sup = y.support();
    VertexId pu = -1, pv = -1;
    for (std::size_t a = 0; a < sup.size() && pu < 0; ++a)
      for (std::size_t b = a + 1; b < sup.size(); ++b)
        if (!(g.weight(sup[a], sup[b]) > 0)) {
          pu = sup[a];
          pv = sup[b];
          break;
        }
    if (pu < 0) break;  // support is a positive clique

    double before = y.f();
    double duv = g.weight(pu, pv);
    if (duv == 0.0) {
      // At a local KKT point the two b's are equal and the move is free;
      // equal case sends the mass to the lower id.
      double bu = y.dx(pu), bv = y.dx(pv);
      double c = y.weight(pu) + y.weight(pv);
      y.shift_pair(g, pu, pv, bv > bu ? 0.0 : c);
    } else {
      y.shift_pair(g, pu, pv, detail::solve_pair(g, y, pu, pv));
    }
    if (cfg.audit) cfg.audit->record(before, y.f());

    auto cd = coordinate_descent(g, y, y.support(), cfg);
    y = std::move(cd.x);
  }
  return y;
}

inline Embedding refine_to_clique(const DifferenceGraph& dg, const Embedding& x,
                                  const SolverConfig& cfg, bool require_kkt = true) {
  return refine_to_clique(dg.gd(), x, cfg, require_kkt);
}

}  // namespace dcs
