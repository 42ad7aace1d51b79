#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "dcs/dcsga.hpp"
#include "dcs/embedding.hpp"
#include "dcs/errors.hpp"
#include "dcs/solver_config.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

enum class ShrinkStop {
  GradientGap,           // Eq.-11 style gap tolerance (the sound criterion)
  ObjectiveImprovement,  // stop once one iteration improves f by < obj_improve_tol
};

// Replicator-dynamics shrink x_i <- x_i (Ax)_i / f(x), valid only when the
// weights induced on s are nonnegative. Baseline used to contrast against
// coordinate descent; f never decreases along the dynamic.
inline CdResult replicator_shrink(const WeightedGraph& g, const Embedding& x0,
                                  std::span<const VertexId> s, const SolverConfig& cfg,
                                  ShrinkStop stop = ShrinkStop::GradientGap) {
  cfg.validate();
  auto sorted = detail::checked_sorted_set(g, s, "replicator_shrink");
  for (const auto& [u, xu] : x0.weights()) {
    (void)xu;
    if (!std::binary_search(sorted.begin(), sorted.end(), u))
      throw std::invalid_argument("replicator_shrink: support not contained in s");
  }
  for (VertexId u : sorted)
    for (auto [v, w] : g.neighbors(u))
      if (w < 0 && std::binary_search(sorted.begin(), sorted.end(), v))
        throw NegativeWeight("replicator_shrink: negative weight inside s");
  if (!(x0.f() > 0)) throw ZeroAffinity("replicator_shrink: starting affinity is zero");

  CdResult res;
  res.x = x0;
  const double tol = cfg.shrink_tol(sorted.size());

  while (res.iterations < cfg.max_shrink_iters) {
    const Embedding& x = res.x;
    if (stop == ShrinkStop::GradientGap) {
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (VertexId k : sorted) {
        double xk = x.weight(k);
        if (xk < 1.0) hi = std::max(hi, x.dx(k));
        if (xk > 0.0) lo = std::min(lo, x.dx(k));
      }
      if (!std::isfinite(hi) || !std::isfinite(lo) || 2.0 * (hi - lo) <= tol) {
        res.converged = true;
        break;
      }
    }

    double before = x.f();
    std::map<VertexId, double> next;
    double sum = 0;
    for (const auto& [u, xu] : x.weights()) {
      double nu = xu * x.dx(u) / before;
      if (nu > 0) {
        next[u] = nu;
        sum += nu;
      }
    }
    for (auto& [u, w] : next) w /= sum;
    res.x = Embedding::from_weights(g, next);
    ++res.iterations;
    if (cfg.audit) cfg.audit->record(before, res.x.f());

    if (stop == ShrinkStop::ObjectiveImprovement &&
        res.x.f() - before <= cfg.obj_improve_tol) {
      res.converged = true;  // claimed: this rule can stop short of a KKT point
      break;
    }
  }
  return res;
}

inline CdResult replicator_shrink(const DifferenceGraph& dg, const Embedding& x0,
                                  std::span<const VertexId> s, const SolverConfig& cfg,
                                  ShrinkStop stop = ShrinkStop::GradientGap) {
  return replicator_shrink(dg.gd(), x0, s, cfg, stop);
}

// Original-SEA style driver: replicator shrink with objective-improvement
// stopping, then the usual expansion. The loose stopping rule can hand the
// expansion a non-KKT point, in which case the analytic step misfires and the
// improvement guard records rejections.
inline SeaResult sea_replicator(const WeightedGraph& g, const Embedding& x0,
                                const SolverConfig& cfg) {
  cfg.validate();
  SeaResult res;
  res.x = x0;
  while (res.rounds < cfg.max_sea_rounds) {
    ++res.rounds;
    // A zero-affinity point (one-hot seed) is already a local KKT point of
    // its support and the dynamic is undefined there; go straight to expand.
    if (res.x.f() > 0) {
      auto cd = replicator_shrink(g, res.x, res.x.support(), cfg,
                                  ShrinkStop::ObjectiveImprovement);
      res.x = std::move(cd.x);
    }
    auto ex = expansion_step(g, res.x, cfg);
    res.guard_rejections += ex.guard_rejections;
    if (ex.kind == ExpandResult::Kind::Converged) break;
    res.x = std::move(ex.x);
  }
  auto all = detail::all_vertices(g);
  res.converged = kkt_residual(g, res.x, all) <= cfg.shrink_tol(res.x.support_size());
  return res;
}

inline SeaResult sea_replicator(const DifferenceGraph& dg, const Embedding& x0,
                                const SolverConfig& cfg) {
  return sea_replicator(dg.gplus(), x0, cfg);
}

}  // namespace dcs
