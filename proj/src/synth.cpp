#include "rumornet/synth.hpp"

#include <algorithm>
#include <random>

#include "rumornet/errors.hpp"

namespace rumornet {

namespace {

constexpr Timestamp kEpochBase = 1727136000;  // 2024-09-24T00:00:00Z

const char* rumor_snippet(RumorCategory c) {
  switch (c) {
    case RumorCategory::DirtyVoterRolls:
      return "They admit the voter rolls are never cleaned before elections";
    case RumorCategory::BallotMailInFraud:
      return "Thousands of fraudulent ballots were mailed out again";
    case RumorCategory::DropBoxTampering:
      return "Another drop box was found tampered with overnight";
    case RumorCategory::SoftwareSecurity:
      return "The voting software was manipulated at will by insiders";
    case RumorCategory::DeadVoters:
      return "Dead voters are still casting ballots in this county";
  }
  return "";
}

const char* kPlainSnippets[] = {
    "Beautiful morning at the rally today",
    "Just had coffee with some great patriots",
    "The debate last night was something else",
    "Can't wait for the game this weekend",
    "Grateful for my family and community",
    "New episode of my favorite show tonight",
};

}  // namespace

SimulatedPlatform::SimulatedPlatform(const SynthConfig& config) {
  if (config.node_count == 0) throw ConfigError("synth: node_count must be >= 1");
  std::mt19937_64 rng(config.rng_seed);
  std::size_t n = config.node_count;

  users_.resize(n);
  followers_.resize(n);
  following_.resize(n);
  char buf[16];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "u%05zu", i);
    users_[i].id = buf;
    index_[users_[i].id] = i;
  }

  // Random out-links; follower lists are the inverse.
  std::uniform_int_distribution<std::size_t> peer(0, n - 1);
  std::uniform_int_distribution<std::size_t> deg(1, std::max<std::size_t>(1, 2 * config.mean_degree));
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    std::size_t d = deg(rng);
    for (std::size_t t = 0; t < d; ++t) {
      std::size_t j = peer(rng);
      if (j == i) continue;
      if (std::find(following_[i].begin(), following_[i].end(), users_[j].id) !=
          following_[i].end())
        continue;
      following_[i].push_back(users_[j].id);
      followers_[j].push_back(users_[i].id);
    }
  }
  std::uniform_int_distribution<std::uint64_t> boost(0, 5000);
  for (std::size_t i = 0; i < n; ++i)
    users_[i].follower_count = followers_[i].size() * 137 + boost(rng);

  // Global timeline. Reposts pick an earlier post by a followed user so the
  // repost graph lines up with the follow structure.
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> posts_per_user(0, config.max_posts_per_user);
  std::uniform_int_distribution<int> category(0, kRumorCategoryCount - 1);
  std::uniform_int_distribution<Timestamp> gap(30, 7200);
  std::uniform_int_distribution<std::size_t> plain(0, std::size(kPlainSnippets) - 1);

  struct Draft {
    std::size_t author;
    std::size_t seq;
  };
  std::vector<Draft> drafts;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = posts_per_user(rng);
    for (std::size_t s = 0; s < count; ++s) drafts.push_back({i, s});
  }
  std::shuffle(drafts.begin(), drafts.end(), rng);

  Timestamp t = kEpochBase;
  std::map<UserId, std::vector<std::size_t>> posts_by_author;
  std::size_t post_no = 0;
  for (const auto& d : drafts) {
    t += gap(rng);
    PostRecord p;
    char idbuf[16];
    std::snprintf(idbuf, sizeof idbuf, "p%06zu", post_no++);
    p.post_id = idbuf;
    p.author = users_[d.author].id;
    p.timestamp = t;

    bool reposted = false;
    if (coin(rng) < config.repost_fraction) {
      // Candidate parents: earlier posts by users this author follows.
      std::vector<std::size_t> candidates;
      for (const auto& followee : following_[d.author]) {
        auto it = posts_by_author.find(followee);
        if (it == posts_by_author.end()) continue;
        for (std::size_t idx : it->second) candidates.push_back(idx);
      }
      if (!candidates.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        const PostRecord& parent = posts_[candidates[pick(rng)]];
        p.repost_of = parent.post_id;
        p.content = parent.content;
        p.rumor_label = parent.rumor_label;
        p.rumor_category = parent.rumor_category;
        reposted = true;
      }
    }
    if (!reposted) {
      if (coin(rng) < config.rumor_fraction) {
        auto c = static_cast<RumorCategory>(category(rng));
        p.content = rumor_snippet(c);
        p.rumor_label = true;
        p.rumor_category = c;
      } else {
        p.content = kPlainSnippets[plain(rng)];
      }
    }
    posts_by_author[p.author].push_back(posts_.size());
    posts_.push_back(std::move(p));
  }
}

std::size_t SimulatedPlatform::index_of(const UserId& user) const {
  auto it = index_.find(user);
  if (it == index_.end()) throw MissingNodeError(user);
  return it->second;
}

std::vector<UserId> SimulatedPlatform::fetch_followers(const UserId& user,
                                                       std::size_t limit) {
  const auto& list = followers_[index_of(user)];
  return {list.begin(), list.begin() + std::min(limit, list.size())};
}

std::vector<UserId> SimulatedPlatform::fetch_following(const UserId& user,
                                                       std::size_t limit) {
  const auto& list = following_[index_of(user)];
  return {list.begin(), list.begin() + std::min(limit, list.size())};
}

std::vector<PostRecord> SimulatedPlatform::fetch_posts(const UserId& user,
                                                       Timestamp since) {
  index_of(user);  // validates the id
  std::vector<PostRecord> out;
  for (const auto& p : posts_) {
    if (p.author == user && p.timestamp > since) out.push_back(p);
  }
  return out;
}

UserNode SimulatedPlatform::fetch_profile(const UserId& user) {
  return users_[index_of(user)];
}

}  // namespace rumornet
