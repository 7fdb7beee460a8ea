#include "rumornet/crawler.hpp"

#include <algorithm>
#include <iostream>
#include <limits>

#include "rumornet/errors.hpp"

namespace rumornet {

std::vector<UserNode> bfs_crawl(PlatformClient& client, const UserId& seed,
                                std::size_t max_users, std::size_t per_user_cap) {
  if (max_users == 0) throw ConfigError("bfs_crawl: max_users must be >= 1");
  CrawlState state;
  state.queue.push_back(seed);
  state.visited.insert(seed);

  while (!state.queue.empty() && state.stored_users.size() < max_users) {
    UserId user = state.queue.front();
    state.queue.pop_front();
    try {
      state.stored_users.push_back(client.fetch_profile(user));
      auto followers = client.fetch_followers(user, per_user_cap);
      auto following = client.fetch_following(user, per_user_cap);
      auto enqueue = [&](const std::vector<UserId>& ids) {
        for (const auto& id : ids) {
          if (state.visited.insert(id).second) state.queue.push_back(id);
        }
      };
      enqueue(followers);
      enqueue(following);
    } catch (const Error& e) {
      std::cerr << "crawl: skipping " << user << ": " << e.what() << '\n';
    }
  }
  return state.stored_users;
}

std::vector<PostRecord> scrape_posts(PlatformClient& client,
                                     const std::vector<UserNode>& users,
                                     CrawlState& state, std::size_t batch_size,
                                     Timestamp now) {
  std::vector<const UserNode*> order;
  order.reserve(users.size());
  for (const auto& u : users) order.push_back(&u);
  auto scraped_at = [&](const UserId& id) -> Timestamp {
    auto it = state.last_scraped.find(id);
    // Never-scraped users sort ahead of everyone.
    return it == state.last_scraped.end()
               ? std::numeric_limits<Timestamp>::min()
               : it->second;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const UserNode* a, const UserNode* b) {
                     Timestamp ta = scraped_at(a->id), tb = scraped_at(b->id);
                     if (ta != tb) return ta < tb;
                     if (a->follower_count != b->follower_count)
                       return a->follower_count > b->follower_count;
                     return a->id < b->id;
                   });

  std::vector<PostRecord> posts;
  std::size_t taken = 0;
  for (const UserNode* u : order) {
    if (taken >= batch_size) break;
    ++taken;
    Timestamp since = scraped_at(u->id);
    try {
      auto fetched = client.fetch_posts(u->id, since);
      for (auto& p : fetched) {
        if (p.timestamp > since) posts.push_back(std::move(p));
      }
      state.last_scraped[u->id] = now;
    } catch (const Error& e) {
      // Deferred: last_scraped untouched, so the user leads the next batch.
      std::cerr << "scrape: deferring " << u->id << ": " << e.what() << '\n';
    }
  }
  return posts;
}

}  // namespace rumornet
