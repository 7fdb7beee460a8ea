#include "rumornet/graph.hpp"

#include <algorithm>

namespace rumornet {

const char* role_name(Role r) {
  switch (r) {
    case Role::Seed: return "seed";
    case Role::Spreader: return "spreader";
    case Role::Infected: return "infected";
    case Role::Ordinary: return "ordinary";
  }
  return "ordinary";
}

const char* category_name(RumorCategory c) {
  switch (c) {
    case RumorCategory::DirtyVoterRolls: return "dirty_voter_rolls";
    case RumorCategory::BallotMailInFraud: return "ballot_mail_in_fraud";
    case RumorCategory::DropBoxTampering: return "drop_box_tampering";
    case RumorCategory::SoftwareSecurity: return "software_security";
    case RumorCategory::DeadVoters: return "dead_voters";
  }
  return "";
}

std::optional<RumorCategory> category_from_name(const std::string& name) {
  if (name == "dirty_voter_rolls") return RumorCategory::DirtyVoterRolls;
  if (name == "ballot_mail_in_fraud") return RumorCategory::BallotMailInFraud;
  if (name == "drop_box_tampering") return RumorCategory::DropBoxTampering;
  if (name == "software_security") return RumorCategory::SoftwareSecurity;
  if (name == "dead_voters") return RumorCategory::DeadVoters;
  return std::nullopt;
}

std::uint64_t content_hash(const std::string& content) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void InformationGraph::add_user(const UserNode& node) {
  if (node.id.empty()) throw InputError("empty user id");
  nodes_[node.id] = node;
}

void InformationGraph::add_edge(const UserId& source, const UserId& target,
                                std::uint64_t weight) {
  if (weight == 0) throw InvalidEdgeError("edge weight must be >= 1");
  if (source == target)
    throw InvalidEdgeError("self-loop rejected: " + source);
  if (!has_node(source)) throw MissingNodeError(source);
  if (!has_node(target)) throw MissingNodeError(target);

  auto& w = in_edges_[target][source];
  if (w == 0) {
    ++edge_count_;
  }
  w += weight;
  out_edges_[source][target] += weight;
  total_weight_ += weight;
}

const UserNode& InformationGraph::node(const UserId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw MissingNodeError(id);
  return it->second;
}

UserNode& InformationGraph::node(const UserId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw MissingNodeError(id);
  return it->second;
}

std::vector<std::pair<UserId, std::uint64_t>> InformationGraph::in_neighbors(
    const UserId& u) const {
  if (!has_node(u)) throw MissingNodeError(u);
  std::vector<std::pair<UserId, std::uint64_t>> out;
  auto it = in_edges_.find(u);
  if (it != in_edges_.end())
    out.assign(it->second.begin(), it->second.end());
  return out;
}

std::vector<std::pair<UserId, std::uint64_t>> InformationGraph::out_neighbors(
    const UserId& u) const {
  if (!has_node(u)) throw MissingNodeError(u);
  std::vector<std::pair<UserId, std::uint64_t>> out;
  auto it = out_edges_.find(u);
  if (it != out_edges_.end())
    out.assign(it->second.begin(), it->second.end());
  return out;
}

std::vector<UserId> InformationGraph::user_ids() const {
  std::vector<UserId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace rumornet
