#include "rumornet/exposure.hpp"

#include <algorithm>
#include <map>

#include "rumornet/errors.hpp"
#include "rumornet/ingest.hpp"

namespace rumornet {

std::vector<ExposureRecord> build_panel(const InformationGraph& graph,
                                        const std::vector<PostRecord>& posts,
                                        const RumorGrouping& grouping) {
  auto by_id = index_posts(posts);
  RumorGrouping group = grouping;
  if (!group) {
    group = [&by_id](const PostRecord& p) -> std::optional<std::string> {
      auto c = resolve_category(p, by_id);
      if (c) return std::string(category_name(*c));
      return std::nullopt;
    };
  }

  // author -> [(timestamp, rumor group)] of that author's rumor activity
  std::map<UserId, std::vector<std::pair<Timestamp, std::string>>> activity;
  std::size_t labeled = 0;
  for (const auto& p : posts) {
    if (auto g = group(p)) {
      activity[p.author].emplace_back(p.timestamp, *g);
      ++labeled;
    }
  }
  if (labeled == 0)
    throw InputError("build_panel: no labeled rumor activity in posts");

  std::vector<ExposureRecord> panel;
  for (const auto& u : graph.user_ids()) {
    // First share per rumor group for u.
    std::map<std::string, Timestamp> first_share;
    if (auto it = activity.find(u); it != activity.end()) {
      for (const auto& [t, g] : it->second) {
        auto fit = first_share.find(g);
        if (fit == first_share.end() || t < fit->second) first_share[g] = t;
      }
    }

    // Impressions per rumor group, from in-neighbor activity. Repeated
    // posts by the same neighbor count separately.
    std::map<std::string, std::vector<Timestamp>> impressions;
    for (const auto& [v, weight] : graph.in_neighbors(u)) {
      (void)weight;
      auto it = activity.find(v);
      if (it == activity.end()) continue;
      for (const auto& [t, g] : it->second) impressions[g].push_back(t);
    }

    std::map<std::string, ExposureRecord> records;
    for (auto& [g, times] : impressions) {
      ExposureRecord rec;
      rec.user = u;
      rec.rumor = g;
      rec.exposure_count = times.size();
      auto fit = first_share.find(g);
      if (fit != first_share.end()) {
        // Same-second impressions order impression-first, so <= counts
        // them as prior exposure.
        std::uint64_t prior = 0;
        for (Timestamp t : times)
          if (t <= fit->second) ++prior;
        rec.first_share_exposure = prior;
      }
      records[g] = std::move(rec);
    }
    // Sharers with no impressions at all are originators: T_u = 0.
    for (const auto& [g, t] : first_share) {
      (void)t;
      if (!records.count(g)) records[g] = {u, g, 0, 0};
    }

    for (auto& [g, rec] : records) panel.push_back(std::move(rec));
  }
  return panel;
}

std::vector<SharingCurvePoint> sharing_curve(
    const std::vector<ExposureRecord>& panel, std::uint64_t k_max) {
  if (panel.empty()) throw EmptyInputError("sharing_curve: empty panel");
  std::vector<SharingCurvePoint> curve;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    std::uint64_t denom = 0, numer = 0;
    for (const auto& rec : panel) {
      if (rec.exposure_count >= k) {
        ++denom;
        if (rec.first_share_exposure && *rec.first_share_exposure <= k) ++numer;
      }
    }
    if (denom == 0) continue;
    curve.push_back({k, static_cast<double>(numer) / denom, denom});
  }
  return curve;
}

DiffusionTimeline diffusion_timeline(const PostId& root_post_id,
                                     const std::vector<PostRecord>& posts,
                                     const InformationGraph& graph,
                                     Timestamp horizon,
                                     Timestamp similarity_window) {
  (void)graph;
  auto by_id = index_posts(posts);
  auto root_it = by_id.find(root_post_id);
  if (root_it == by_id.end()) throw MissingPostError(root_post_id);
  const PostRecord& root = *root_it->second;
  auto root_category = resolve_category(root, by_id);
  if (root.is_repost() || !root.is_rumor() || !root_category)
    throw InputError("diffusion_timeline: root must be an original rumor post");

  Timestamp t0 = root.timestamp;

  // Secondary same-category originals created within the similarity window.
  std::map<PostId, const PostRecord*> tracked;
  tracked[root.post_id] = &root;
  std::map<UserId, Timestamp> first_secondary;
  for (const auto& p : posts) {
    if (p.is_repost() || p.post_id == root.post_id) continue;
    if (resolve_category(p, by_id) != root_category) continue;
    Timestamp dt = p.timestamp - t0;
    if (dt < 0 || dt > similarity_window) continue;
    tracked[p.post_id] = &p;
    auto it = first_secondary.find(p.author);
    if (it == first_secondary.end() || dt < it->second)
      first_secondary[p.author] = dt;
  }

  // Reposts whose chain leads to any tracked post, within the horizon.
  std::vector<std::pair<Timestamp, PostId>> events;
  for (const auto& p : posts) {
    if (!p.is_repost()) continue;
    const PostRecord* cur = &p;
    bool hits = false;
    for (int depth = 0; cur->repost_of && depth < 64; ++depth) {
      if (tracked.count(*cur->repost_of)) {
        hits = true;
        break;
      }
      auto it = by_id.find(*cur->repost_of);
      if (it == by_id.end()) break;
      cur = it->second;
    }
    if (!hits) continue;
    Timestamp dt = p.timestamp - t0;
    if (dt < 0 || dt > horizon) continue;
    events.emplace_back(dt, p.post_id);
  }
  std::sort(events.begin(), events.end());

  DiffusionTimeline timeline;
  timeline.root_post_id = root_post_id;
  timeline.horizon = horizon;
  std::uint64_t cumulative = 0;
  for (const auto& [dt, post_id] : events) {
    (void)post_id;
    timeline.points.emplace_back(dt, ++cumulative);
  }
  for (const auto& [user, dt] : first_secondary)
    timeline.secondary_posters.emplace_back(user, dt);
  std::sort(timeline.secondary_posters.begin(), timeline.secondary_posters.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  return timeline;
}

}  // namespace rumornet
