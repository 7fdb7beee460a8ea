#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rumornet/errors.hpp"
#include "rumornet/types.hpp"

namespace rumornet {

// Directed, weighted information graph. Nodes are users, an edge (v -> u)
// is an observed impression channel from v to u; its weight accumulates
// repeated observations. Self-loops are rejected. Construction is
// single-writer; once built the graph is safe to share read-only.
class InformationGraph {
 public:
  // Last write wins for follower_count / role / state of an existing id.
  void add_user(const UserNode& node);

  // Both endpoints must exist and differ. Re-adding an edge sums weights.
  void add_edge(const UserId& source, const UserId& target, std::uint64_t weight);

  bool has_node(const UserId& id) const { return nodes_.count(id) > 0; }
  const UserNode& node(const UserId& id) const;
  UserNode& node(const UserId& id);

  // (source, weight) pairs in ascending UserId order.
  std::vector<std::pair<UserId, std::uint64_t>> in_neighbors(const UserId& u) const;
  std::vector<std::pair<UserId, std::uint64_t>> out_neighbors(const UserId& u) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::uint64_t total_edge_weight() const { return total_weight_; }

  // Ascending UserId order, for reproducible iteration.
  std::vector<UserId> user_ids() const;

 private:
  std::unordered_map<UserId, UserNode> nodes_;
  // std::map keeps neighbor lists in deterministic UserId order.
  std::unordered_map<UserId, std::map<UserId, std::uint64_t>> in_edges_;
  std::unordered_map<UserId, std::map<UserId, std::uint64_t>> out_edges_;
  std::size_t edge_count_ = 0;
  std::uint64_t total_weight_ = 0;
};

}  // namespace rumornet
