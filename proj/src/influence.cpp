#include "rumornet/influence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rumornet/errors.hpp"

namespace rumornet {

PostIndex::PostIndex(const std::vector<PostRecord>& posts) {
  std::map<PostId, std::set<UserId>> reposter_sets;
  for (const auto& p : posts) {
    if (p.is_repost()) {
      reposter_sets[*p.repost_of].insert(p.author);
    } else if (p.is_rumor()) {
      rumor_posts_[p.author].push_back(&p);
    }
  }
  for (auto& [post_id, users] : reposter_sets)
    reposters_[post_id].assign(users.begin(), users.end());
}

const std::vector<const PostRecord*>& PostIndex::rumor_posts(const UserId& u) const {
  static const std::vector<const PostRecord*> empty;
  auto it = rumor_posts_.find(u);
  return it == rumor_posts_.end() ? empty : it->second;
}

const std::vector<UserId>& PostIndex::reposters(const PostId& p) const {
  static const std::vector<UserId> empty;
  auto it = reposters_.find(p);
  return it == reposters_.end() ? empty : it->second;
}

namespace {

std::uint64_t followers(const InformationGraph& graph, const UserId& u) {
  return graph.node(u).follower_count;
}

}  // namespace

InfluenceScore influence(const UserId& u, const InformationGraph& graph,
                         const PostIndex& index) {
  return influence_overlap_adjusted(u, graph, index, 0.0);
}

InfluenceScore influence_overlap_adjusted(const UserId& u,
                                          const InformationGraph& graph,
                                          const PostIndex& index, double theta) {
  if (theta < 0.0 || theta > 1.0) throw RangeError("theta must be in [0,1]");
  double f_u = static_cast<double>(followers(graph, u));
  double total = 0.0;
  for (const auto* post : index.rumor_posts(u)) {
    double reposter_audience = 0.0;
    for (const auto& r : index.reposters(post->post_id))
      reposter_audience += static_cast<double>(followers(graph, r));
    total += f_u + (1.0 - theta) * reposter_audience;
  }
  return {u, total};
}

InfluenceScore influence_topk(const UserId& u, const InformationGraph& graph,
                              const PostIndex& index, std::size_t k) {
  if (k < 1) throw RangeError("k must be >= 1");
  double f_u = static_cast<double>(followers(graph, u));
  double total = 0.0;
  for (const auto* post : index.rumor_posts(u)) {
    std::vector<std::pair<std::uint64_t, UserId>> audience;
    for (const auto& r : index.reposters(post->post_id))
      audience.emplace_back(followers(graph, r), r);
    // Largest follower counts first; ties by ascending UserId.
    std::sort(audience.begin(), audience.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    double reposter_audience = 0.0;
    for (std::size_t i = 0; i < std::min(k, audience.size()); ++i)
      reposter_audience += static_cast<double>(audience[i].first);
    total += f_u + reposter_audience;
  }
  return {u, total};
}

namespace {

// Average (fractional) ranks; values aligned by caller.
std::vector<double> average_ranks(const std::vector<double>& values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> pearson_r(const std::vector<double>& x,
                                const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("pearson_r: length mismatch");
  if (x.size() < 2) throw InputError("pearson_r: need at least 2 points");
  std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> spearman_rho(
    const std::vector<std::pair<UserId, double>>& a,
    const std::vector<std::pair<UserId, double>>& b) {
  if (a.size() != b.size()) throw InputError("spearman_rho: size mismatch");
  if (a.size() < 2) throw InputError("spearman_rho: need at least 2 users");
  std::map<UserId, double> bm(b.begin(), b.end());
  if (bm.size() != b.size()) throw InputError("spearman_rho: duplicate user in b");
  std::vector<double> va, vb;
  va.reserve(a.size());
  vb.reserve(a.size());
  std::set<UserId> seen;
  for (const auto& [user, value] : a) {
    if (!seen.insert(user).second)
      throw InputError("spearman_rho: duplicate user in a");
    auto it = bm.find(user);
    if (it == bm.end())
      throw InputError("spearman_rho: user sets differ: " + user);
    va.push_back(value);
    vb.push_back(it->second);
  }
  return pearson_r(average_ranks(va), average_ranks(vb));
}

double top_set_overlap(const std::vector<std::pair<UserId, double>>& a,
                       const std::vector<std::pair<UserId, double>>& b,
                       std::size_t n) {
  if (n == 0) throw InputError("top_set_overlap: n must be >= 1");
  if (a.size() < n || b.size() < n)
    throw InputError("top_set_overlap: n larger than list");
  auto top_n = [n](std::vector<std::pair<UserId, double>> list) {
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    std::set<UserId> top;
    for (std::size_t i = 0; i < n; ++i) top.insert(list[i].first);
    return top;
  };
  auto ta = top_n(a);
  auto tb = top_n(b);
  std::size_t shared = 0;
  for (const auto& u : ta)
    if (tb.count(u)) ++shared;
  return static_cast<double>(shared) / static_cast<double>(n);
}

std::vector<StateRumorRate> state_rumor_rates(
    const std::vector<PostRecord>& posts,
    const std::map<UserId, std::string>& user_states,
    const std::map<std::string, std::uint64_t>& populations,
    const std::map<std::string, double>& vote_margins) {
  std::map<std::string, std::uint64_t> rumor_counts;
  std::map<std::string, std::set<UserId>> users_by_state;
  for (const auto& [user, state] : user_states) users_by_state[state].insert(user);
  for (const auto& p : posts) {
    if (!p.is_rumor()) continue;
    auto it = user_states.find(p.author);
    if (it == user_states.end()) continue;  // unassigned authors excluded
    ++rumor_counts[it->second];
  }
  std::vector<StateRumorRate> rates;
  for (const auto& [state, pop] : populations) {
    if (pop == 0) continue;
    StateRumorRate r;
    r.state = state;
    r.rumor_posts = rumor_counts.count(state) ? rumor_counts.at(state) : 0;
    r.rumor_posts_per_100k = 100000.0 * static_cast<double>(r.rumor_posts) /
                             static_cast<double>(pop);
    r.geolocated_users = users_by_state.count(state)
                             ? users_by_state.at(state).size()
                             : 0;
    auto mit = vote_margins.find(state);
    if (mit != vote_margins.end()) r.vote_margin = mit->second;
    rates.push_back(std::move(r));
  }
  return rates;
}

}  // namespace rumornet
