#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "dcs/core_decomposition.hpp"
#include "dcs/dcsga.hpp"
#include "dcs/difference_graph.hpp"
#include "dcs/replicator.hpp"
#include "dcs/solver_config.hpp"

namespace dcs {

// Per-vertex seed bound: mu_u = tau_u * w_u / (tau_u + 1) caps the affinity
// of any positive-clique embedding whose clique contains u. w_u is the
// maximum D+ weight on edges touching the closed ego net of u, tau_u the core
// number of u in G_D+.
struct InitBound {
  VertexId vertex = -1;
  double w_u = 0;
  int tau_u = 0;
  double mu_u = 0;
};

// Bounds for all vertices, sorted descending by mu (ties by ascending id).
// O(m+) plus the sort.
inline std::vector<InitBound> smart_init_order(const DifferenceGraph& dg) {
  const WeightedGraph& gp = dg.gplus();
  const VertexId n = gp.vertex_count();

  // incident[v] = heaviest D+ edge at v; an edge touching the closed ego net
  // of u is incident to some member of it, so w_u folds incident[] over T_u.
  std::vector<double> incident(n, 0.0);
  for (VertexId v = 0; v < n; ++v)
    for (auto [u, w] : gp.neighbors(v)) {
      (void)u;
      incident[v] = std::max(incident[v], w);
    }
  std::vector<int> tau = core_numbers(gp);

  std::vector<InitBound> out(n);
  for (VertexId u = 0; u < n; ++u) {
    double w = incident[u];
    for (auto [v, ew] : gp.neighbors(u)) {
      (void)ew;
      w = std::max(w, incident[v]);
    }
    out[u] = {u, w, tau[u], tau[u] * w / (tau[u] + 1.0)};
  }
  std::sort(out.begin(), out.end(), [](const InitBound& a, const InitBound& b) {
    if (a.mu_u != b.mu_u) return a.mu_u > b.mu_u;
    return a.vertex < b.vertex;
  });
  return out;
}

struct DcsgaResult {
  Embedding x;  // caches rebuilt against G_D
  double affinity = 0;
  double kkt_res = 0;  // global residual on G_D
  bool positive_clique = false;
  bool converged = false;
  std::size_t inits_used = 0;
  long guard_rejections = 0;
};

namespace detail {

struct SeedOutcome {
  Embedding x;  // positive-clique embedding over G_D+
  bool converged = false;
  long guard_rejections = 0;
};

// One full solve from a one-hot seed on G_D+. A refinement can break global
// optimality of the KKT certificate, so alternate solve/refine until the
// refined point also passes the global residual check.
inline SeedOutcome run_seed_cd(const WeightedGraph& gp, VertexId seed, const SolverConfig& cfg,
                               const std::vector<VertexId>& all) {
  SeedOutcome out;
  Embedding x = Embedding::one_hot(gp, seed);
  for (int cycle = 0; cycle < cfg.refine_cycles; ++cycle) {
    auto sea = seacd(gp, x, cfg);
    out.guard_rejections += sea.guard_rejections;
    Embedding y = refine_to_clique(gp, sea.x, cfg, /*require_kkt=*/false);
    out.x = y;
    if (!sea.converged) return out;
    if (kkt_residual(gp, y, all) <= cfg.shrink_tol(y.support_size())) {
      out.converged = true;
      return out;
    }
    x = std::move(y);
  }
  return out;
}

// SEA+Refine baseline: replicator shrink with objective-improvement stopping,
// one refinement pass, honest convergence check at the end.
inline SeedOutcome run_seed_replicator(const WeightedGraph& gp, VertexId seed,
                                       const SolverConfig& cfg,
                                       const std::vector<VertexId>& all) {
  SeedOutcome out;
  auto sea = sea_replicator(gp, Embedding::one_hot(gp, seed), cfg);
  out.guard_rejections = sea.guard_rejections;
  out.x = refine_to_clique(gp, sea.x, cfg, /*require_kkt=*/false);
  out.converged = kkt_residual(gp, out.x, all) <= cfg.shrink_tol(out.x.support_size());
  return out;
}

template <class RunSeed>
DcsgaResult multi_init_solve(const DifferenceGraph& dg, const SolverConfig& cfg,
                             RunSeed&& run_seed) {
  cfg.validate();
  const WeightedGraph& gp = dg.gplus();
  const VertexId n = gp.vertex_count();
  if (n == 0) throw EmptyGraph("dcsga solve: empty graph");
  const auto all = all_vertices(gp);

  DcsgaResult res;
  auto finish = [&](Embedding over_gplus, bool converged) {
    Embedding x = Embedding::from_weights(dg.gd(), over_gplus.weights());
    res.affinity = x.f();
    res.kkt_res = kkt_residual(dg.gd(), x, all_vertices(dg.gd()));
    res.positive_clique = is_positive_clique(dg.gd(), x.support());
    res.converged = converged;
    res.x = std::move(x);
    return res;
  };

  // Both optima are 0 without a positive edge; the lowest-id one-hot attains
  // it.
  if (dg.gd().edge_count_pos() == 0) return finish(Embedding::one_hot(gp, 0), true);

  std::vector<InitBound> order;
  switch (cfg.init_policy) {
    case InitPolicy::SmartOrder:
      order = smart_init_order(dg);
      break;
    case InitPolicy::AllVertices:
      for (VertexId u = 0; u < n; ++u) order.push_back({u, 0, 0, 0});
      break;
    case InitPolicy::GivenSeeds:
      for (VertexId u : cfg.seeds) {
        if (u < 0 || u >= n) throw std::out_of_range("dcsga solve: bad seed id");
        order.push_back({u, 0, 0, 0});
      }
      if (order.empty()) throw std::invalid_argument("dcsga solve: no seeds given");
      break;
  }
  if (cfg.max_inits > 0 && order.size() > cfg.max_inits) order.resize(cfg.max_inits);
  const bool use_bounds = cfg.init_policy == InitPolicy::SmartOrder;

  struct Best {
    double f = 0.0;  // matches Alg. 5's y = 0 start
    std::size_t seed_index = static_cast<std::size_t>(-1);
    std::optional<SeedOutcome> outcome;
  } best;

  unsigned workers = 1;
  if (cfg.parallel_inits) {
    workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, order.size()));
  }

  std::size_t inits_used = 0;
  long rejections = 0;

  if (workers == 1) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (use_bounds && order[k].mu_u <= best.f) break;
      SeedOutcome o = run_seed(gp, order[k].vertex, cfg, all);
      ++inits_used;
      rejections += o.guard_rejections;
      if (o.x.f() > best.f) {
        best.f = o.x.f();
        best.seed_index = k;
        best.outcome = std::move(o);
      }
    }
  } else {
    // Seeds race but reduce by (f, seed index), which matches the sequential
    // answer; workers may only run extra seeds, never skip one the
    // sequential scan would have used.
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        std::size_t k = next.fetch_add(1);
        if (k >= order.size()) return;
        if (use_bounds) {
          std::lock_guard<std::mutex> lock(mu);
          if (order[k].mu_u <= best.f) return;
        }
        SeedOutcome o = run_seed(gp, order[k].vertex, cfg, all);
        std::lock_guard<std::mutex> lock(mu);
        ++inits_used;
        rejections += o.guard_rejections;
        if (o.x.f() > best.f || (o.x.f() == best.f && k < best.seed_index)) {
          best.f = o.x.f();
          best.seed_index = k;
          best.outcome = std::move(o);
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  res.inits_used = inits_used;
  res.guard_rejections = rejections;
  if (!best.outcome) {
    // Unreachable with m+ > 0: a positive edge gives both endpoints mu > 0,
    // so at least one seed runs and any run yields f >= 0.
    return finish(Embedding::one_hot(gp, 0), true);
  }
  return finish(std::move(best.outcome->x), best.outcome->converged);
}

}  // namespace detail

// NewSEA: seeds in descending-mu order, each solved by SEACD + refinement;
// scanning stops once mu_u cannot beat the best f found.
inline DcsgaResult new_sea(const DifferenceGraph& dg, const SolverConfig& cfg = {}) {
  return detail::multi_init_solve(dg, cfg, detail::run_seed_cd);
}

// SEA+Refine comparison baseline (replicator shrink, objective-improvement
// stopping). Expansion-guard rejections surface the stage errors the looser
// stopping rule causes.
inline DcsgaResult replicator_baseline(const DifferenceGraph& dg, const SolverConfig& cfg = {}) {
  return detail::multi_init_solve(dg, cfg, detail::run_seed_replicator);
}

}  // namespace dcs
