#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rumornet/crawler.hpp"
#include "rumornet/types.hpp"

namespace rumornet {

// Deterministic synthetic social network used by tests and crawl-sim.
struct SynthConfig {
  std::size_t node_count = 100;
  std::size_t mean_degree = 4;
  std::uint64_t rng_seed = 1;
  double rumor_fraction = 0.05;   // share of originals that carry a rumor
  double repost_fraction = 0.35;  // share of posts that are reposts
  std::size_t max_posts_per_user = 6;
};

class SimulatedPlatform : public PlatformClient {
 public:
  explicit SimulatedPlatform(const SynthConfig& config);

  std::vector<UserId> fetch_followers(const UserId& user, std::size_t limit) override;
  std::vector<UserId> fetch_following(const UserId& user, std::size_t limit) override;
  std::vector<PostRecord> fetch_posts(const UserId& user, Timestamp since) override;
  UserNode fetch_profile(const UserId& user) override;

  const std::vector<UserNode>& all_users() const { return users_; }
  const std::vector<PostRecord>& all_posts() const { return posts_; }

 private:
  std::size_t index_of(const UserId& user) const;

  std::vector<UserNode> users_;
  std::vector<std::vector<UserId>> followers_;
  std::vector<std::vector<UserId>> following_;
  std::vector<PostRecord> posts_;  // global timeline, timestamp order
  std::map<UserId, std::size_t> index_;
};

}  // namespace rumornet
