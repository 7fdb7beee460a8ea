#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rumornet/graph.hpp"
#include "rumornet/types.hpp"

namespace rumornet {

// Follower-reach influence I_u: for each original rumor post by u, the
// author's followers plus the followers of every distinct direct reposter.
// Variants down-weight or truncate the reposter audience.
struct InfluenceScore {
  UserId user;
  double value = 0.0;
};

// Author/repost indexes built once and shared across per-user queries.
class PostIndex {
 public:
  explicit PostIndex(const std::vector<PostRecord>& posts);

  // Original rumor posts by u (rumor_label true, repost_of absent).
  const std::vector<const PostRecord*>& rumor_posts(const UserId& u) const;

  // Distinct direct reposters of p, ascending UserId.
  const std::vector<UserId>& reposters(const PostId& p) const;

 private:
  std::map<UserId, std::vector<const PostRecord*>> rumor_posts_;
  std::map<PostId, std::vector<UserId>> reposters_;
};

InfluenceScore influence(const UserId& u, const InformationGraph& graph,
                         const PostIndex& index);

// I_u(theta): reposter audience scaled by (1 - theta); theta=0 is the base.
InfluenceScore influence_overlap_adjusted(const UserId& u,
                                          const InformationGraph& graph,
                                          const PostIndex& index, double theta);

// Only the k largest-follower reposters per post contribute (UserId tiebreak).
InfluenceScore influence_topk(const UserId& u, const InformationGraph& graph,
                              const PostIndex& index, std::size_t k);

// Spearman rank correlation with average ranks for ties. Both lists must
// cover the same user set; degenerate variance yields nullopt.
std::optional<double> spearman_rho(
    const std::vector<std::pair<UserId, double>>& a,
    const std::vector<std::pair<UserId, double>>& b);

std::optional<double> pearson_r(const std::vector<double>& x,
                                const std::vector<double>& y);

// |top_n(a) ∩ top_n(b)| / n, top-n by descending value with UserId tiebreak.
double top_set_overlap(const std::vector<std::pair<UserId, double>>& a,
                       const std::vector<std::pair<UserId, double>>& b,
                       std::size_t n);

struct StateRumorRate {
  std::string state;
  double rumor_posts_per_100k = 0.0;
  std::uint64_t rumor_posts = 0;
  std::uint64_t geolocated_users = 0;
  std::optional<double> vote_margin;
};

// Rumor posts per 100K residents, by the author's assigned state. States
// with zero population are excluded.
std::vector<StateRumorRate> state_rumor_rates(
    const std::vector<PostRecord>& posts,
    const std::map<UserId, std::string>& user_states,
    const std::map<std::string, std::uint64_t>& populations,
    const std::map<std::string, double>& vote_margins = {});

}  // namespace rumornet
