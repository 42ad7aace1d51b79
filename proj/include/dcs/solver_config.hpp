#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dcs/weighted_graph.hpp"

namespace dcs {

// Step-level non-decrease bookkeeping for f across shrink, expansion and
// refinement moves. Shared across threads when inits run in parallel.
struct MonotonicityAudit {
  std::atomic<long long> steps{0};
  std::atomic<long long> violations{0};

  void record(double before, double after) {
    steps.fetch_add(1, std::memory_order_relaxed);
    if (after < before - 1e-12 * (1.0 + std::abs(before)))
      violations.fetch_add(1, std::memory_order_relaxed);
  }
};

enum class InitPolicy { SmartOrder, AllVertices, GivenSeeds };

struct SolverConfig {
  // Gradient-gap tolerance is eps_scale * (1/|S|) for the set S being solved.
  double eps_scale = 1e-2;
  long max_shrink_iters = 100000;
  int max_sea_rounds = 500;

  InitPolicy init_policy = InitPolicy::SmartOrder;
  std::vector<VertexId> seeds;  // used with InitPolicy::GivenSeeds
  std::size_t max_inits = 0;    // 0 = no cap
  bool parallel_inits = false;
  unsigned threads = 0;  // 0 = hardware concurrency; used when parallel_inits
  std::uint64_t rng_seed = 0;  // reserved; all defaults are deterministic

  // Expansion accepts a step only when f improves by more than expand_guard,
  // halving the step up to expand_halvings times.
  double expand_guard = 1e-12;
  int expand_halvings = 30;

  // Objective-improvement stopping threshold for the replicator baseline.
  double obj_improve_tol = 1e-6;

  // Bound on solve->refine alternations per seed.
  int refine_cycles = 100;

  MonotonicityAudit* audit = nullptr;

  double shrink_tol(std::size_t set_size) const {
    return eps_scale / static_cast<double>(set_size);
  }

  void validate() const {
    if (!(eps_scale > 0)) throw std::invalid_argument("eps_scale must be > 0");
    if (max_shrink_iters <= 0 || max_sea_rounds <= 0 || refine_cycles <= 0)
      throw std::invalid_argument("iteration caps must be > 0");
  }
};

}  // namespace dcs
