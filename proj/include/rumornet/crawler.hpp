#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rumornet/types.hpp"

namespace rumornet {

// Abstract platform access. The live client is out of scope; tests and the
// crawl-sim subcommand use SimulatedPlatform.
class PlatformClient {
 public:
  virtual ~PlatformClient() = default;
  virtual std::vector<UserId> fetch_followers(const UserId& user, std::size_t limit) = 0;
  virtual std::vector<UserId> fetch_following(const UserId& user, std::size_t limit) = 0;
  virtual std::vector<PostRecord> fetch_posts(const UserId& user, Timestamp since) = 0;
  virtual UserNode fetch_profile(const UserId& user) = 0;
};

struct CrawlState {
  std::deque<UserId> queue;
  std::set<UserId> visited;
  std::vector<UserNode> stored_users;
  std::map<UserId, Timestamp> last_scraped;
};

// Breadth-first user discovery from a seed account. Per dequeued user at
// most per_user_cap followers and per_user_cap following are fetched;
// unseen ids are enqueued. Client failures skip the user and continue.
std::vector<UserNode> bfs_crawl(PlatformClient& client, const UserId& seed,
                                std::size_t max_users, std::size_t per_user_cap);

// Scrapes one batch, prioritized by (least recently scraped, follower count
// descending, UserId). Only posts after each user's last_scraped are pulled;
// last_scraped advances to `now`. Failing users are deferred to a later batch.
std::vector<PostRecord> scrape_posts(PlatformClient& client,
                                     const std::vector<UserNode>& users,
                                     CrawlState& state, std::size_t batch_size,
                                     Timestamp now);

}  // namespace rumornet
