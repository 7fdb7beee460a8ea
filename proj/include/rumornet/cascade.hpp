#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "rumornet/graph.hpp"
#include "rumornet/types.hpp"

namespace rumornet {

// Weighted threshold cascade. Synchronous iterations; transmitting nodes
// re-expose their out-neighbors every iteration and exposure accumulates
// without decay. A node flips to Infected once cumulative exposure >= its
// threshold; it transmits from the next iteration (when infected_transmit
// is on, the interpretive default).
struct CascadeConfig {
  // Uniform threshold phi, or per-node thresholds sampled uniformly on
  // [threshold_lo, threshold_hi] from rng_seed.
  bool per_node_thresholds = false;
  std::uint64_t phi = 1;
  std::uint64_t threshold_lo = 1;
  std::uint64_t threshold_hi = 1;
  std::uint64_t rng_seed = 0;

  std::size_t max_iterations = 100;
  std::set<UserId> seed_users;
  std::set<UserId> spreader_users;  // transmit from iteration 1, like seeds
  bool infected_transmit = true;
};

struct CascadeResult {
  std::size_t iterations_run = 0;
  // Fraction of nodes that have adopted (seeds, spreaders, infected) at the
  // end of each iteration.
  std::vector<double> infected_fraction_per_iteration;
  std::map<UserId, Role> final_roles;
  bool converged = false;

  bool operator==(const CascadeResult&) const = default;
};

CascadeResult run_cascade(const InformationGraph& graph, const CascadeConfig& config);

// One run per integer phi in [phi_lo, phi_hi]; identical seeds and graph.
std::map<std::uint64_t, CascadeResult> sweep_thresholds(
    const InformationGraph& graph, const std::set<UserId>& seeds,
    std::uint64_t phi_lo, std::uint64_t phi_hi, std::size_t max_iterations);

// Deterministic per-node thresholds, uniform on [lo, hi].
std::map<UserId, std::uint64_t> sample_thresholds(const InformationGraph& graph,
                                                  std::uint64_t lo,
                                                  std::uint64_t hi,
                                                  std::uint64_t rng_seed);

}  // namespace rumornet
