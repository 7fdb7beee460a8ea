#include "rumornet/cascade.hpp"

#include <random>
#include <unordered_map>
#include <unordered_set>

#include "rumornet/errors.hpp"

namespace rumornet {

std::map<UserId, std::uint64_t> sample_thresholds(const InformationGraph& graph,
                                                  std::uint64_t lo,
                                                  std::uint64_t hi,
                                                  std::uint64_t rng_seed) {
  if (lo > hi) throw RangeError("sample_thresholds: lo > hi");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
  std::map<UserId, std::uint64_t> thresholds;
  // user_ids() is sorted, so the draw sequence is reproducible.
  for (const auto& id : graph.user_ids()) thresholds[id] = dist(rng);
  return thresholds;
}

CascadeResult run_cascade(const InformationGraph& graph,
                          const CascadeConfig& config) {
  if (config.seed_users.empty())
    throw ConfigError("run_cascade: empty seed set");
  for (const auto& s : config.seed_users)
    if (!graph.has_node(s)) throw MissingNodeError(s);
  if (config.per_node_thresholds && config.threshold_lo > config.threshold_hi)
    throw RangeError("run_cascade: threshold_lo > threshold_hi");
  if (!config.per_node_thresholds && config.phi < 1)
    throw ConfigError("run_cascade: phi must be >= 1");

  std::map<UserId, std::uint64_t> thresholds;
  if (config.per_node_thresholds)
    thresholds = sample_thresholds(graph, config.threshold_lo,
                                   config.threshold_hi, config.rng_seed);

  auto threshold_of = [&](const UserId& u) {
    return config.per_node_thresholds ? thresholds.at(u) : config.phi;
  };

  std::vector<UserId> ids = graph.user_ids();
  std::unordered_set<UserId> transmitting;
  std::unordered_set<UserId> infected;
  for (const auto& s : config.seed_users) transmitting.insert(s);
  for (const auto& s : config.spreader_users)
    if (graph.has_node(s) && !config.seed_users.count(s)) transmitting.insert(s);

  std::size_t adopter_baseline = transmitting.size();
  std::unordered_map<UserId, std::uint64_t> exposure;

  CascadeResult result;
  std::size_t n = graph.node_count();
  for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
    // Accumulate this round's exposure from the start-of-iteration
    // transmitting set; flips apply only at the iteration boundary.
    std::vector<UserId> newly_infected;
    bool pending_exposure = false;
    for (const auto& u : ids) {
      if (transmitting.count(u) || infected.count(u)) continue;
      std::uint64_t round = 0;
      for (const auto& [v, w] : graph.in_neighbors(u)) {
        if (transmitting.count(v)) round += w;
      }
      if (round == 0) continue;
      std::uint64_t total = (exposure[u] += round);
      if (total >= threshold_of(u))
        newly_infected.push_back(u);
      else
        pending_exposure = true;  // still accumulating toward its threshold
    }

    for (const auto& u : newly_infected) {
      infected.insert(u);
      if (config.infected_transmit) transmitting.insert(u);
    }

    result.iterations_run = iter + 1;
    double adopters = static_cast<double>(adopter_baseline + infected.size());
    result.infected_fraction_per_iteration.push_back(
        n > 0 ? adopters / static_cast<double>(n) : 0.0);

    // A susceptible node that keeps receiving exposure will flip in some
    // later round, so the run is only settled once nothing accumulates.
    if (newly_infected.empty() && !pending_exposure) {
      result.converged = true;
      break;
    }
  }

  for (const auto& id : ids) {
    if (config.seed_users.count(id))
      result.final_roles[id] = Role::Seed;
    else if (config.spreader_users.count(id))
      result.final_roles[id] = Role::Spreader;
    else if (infected.count(id))
      result.final_roles[id] = Role::Infected;
    else
      result.final_roles[id] = Role::Ordinary;
  }
  return result;
}

std::map<std::uint64_t, CascadeResult> sweep_thresholds(
    const InformationGraph& graph, const std::set<UserId>& seeds,
    std::uint64_t phi_lo, std::uint64_t phi_hi, std::size_t max_iterations) {
  if (phi_lo < 1 || phi_lo > phi_hi)
    throw RangeError("sweep_thresholds: bad phi range");
  std::map<std::uint64_t, CascadeResult> results;
  for (std::uint64_t phi = phi_lo; phi <= phi_hi; ++phi) {
    CascadeConfig config;
    config.phi = phi;
    config.max_iterations = max_iterations;
    config.seed_users = seeds;
    results[phi] = run_cascade(graph, config);
  }
  return results;
}

}  // namespace rumornet
