#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rumornet/graph.hpp"
#include "rumornet/types.hpp"

namespace rumornet {

// Per (user, rumor) exposure tally. T_u counts the impressions received up
// to and including the moment of the user's first share (same-second
// impressions order impression-first); originators have T_u = 0. E_u is the
// total over the whole observation window, including post-share impressions.
struct ExposureRecord {
  UserId user;
  std::string rumor;  // rumor group key (category name by default)
  std::uint64_t exposure_count = 0;                  // E_u
  std::optional<std::uint64_t> first_share_exposure; // T_u; nullopt = never shared

  bool operator==(const ExposureRecord&) const = default;
};

// Pluggable rumor identity; the default buckets by CISA category.
using RumorGrouping = std::function<std::optional<std::string>(const PostRecord&)>;

// Builds the (user, rumor) exposure panel from in-neighbor activity.
// Reposts inherit the rumor identity of their chain root. Throws InputError
// if labeled rumor activity cannot be resolved at all.
std::vector<ExposureRecord> build_panel(const InformationGraph& graph,
                                        const std::vector<PostRecord>& posts,
                                        const RumorGrouping& grouping = nullptr);

struct SharingCurvePoint {
  std::uint64_t k = 0;
  double probability = 0.0;
  std::uint64_t sample_size = 0;  // n_k
};

// P(k) = |{u : E_u >= k and T_u <= k}| / |{u : E_u >= k}| for k = 0..k_max;
// zero-denominator points are omitted.
std::vector<SharingCurvePoint> sharing_curve(
    const std::vector<ExposureRecord>& panel, std::uint64_t k_max);

struct DiffusionTimeline {
  PostId root_post_id;
  Timestamp horizon = 0;
  // (elapsed seconds, cumulative reposts), one point per qualifying repost.
  std::vector<std::pair<Timestamp, std::uint64_t>> points;
  // Each secondary poster's first same-category original post time.
  std::vector<std::pair<UserId, Timestamp>> secondary_posters;
};

// Cumulative repost series for a root rumor post, including reposts of
// secondary same-category originals created within similarity_window.
DiffusionTimeline diffusion_timeline(const PostId& root_post_id,
                                     const std::vector<PostRecord>& posts,
                                     const InformationGraph& graph,
                                     Timestamp horizon,
                                     Timestamp similarity_window);

}  // namespace rumornet
