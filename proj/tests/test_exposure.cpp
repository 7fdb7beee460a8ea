#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rumornet/exposure.hpp"
#include "rumornet/ingest.hpp"

using namespace rumornet;

namespace {

UserNode user(const std::string& id) {
  UserNode u;
  u.id = id;
  return u;
}

PostRecord rumor(const std::string& id, const std::string& author, Timestamp t,
                 RumorCategory c = RumorCategory::DeadVoters) {
  PostRecord p;
  p.post_id = id;
  p.author = author;
  p.timestamp = t;
  p.content = "claim";
  p.rumor_label = true;
  p.rumor_category = c;
  return p;
}

PostRecord repost(const std::string& id, const std::string& author, Timestamp t,
                  const std::string& of) {
  PostRecord p;
  p.post_id = id;
  p.author = author;
  p.timestamp = t;
  p.content = "claim";
  p.repost_of = of;
  return p;
}

InformationGraph graph_with_edge(const std::string& from, const std::string& to) {
  InformationGraph g;
  g.add_user(user(from));
  g.add_user(user(to));
  g.add_edge(from, to, 1);
  return g;
}

ExposureRecord rec(std::uint64_t e, std::optional<std::uint64_t> t) {
  ExposureRecord r;
  r.user = "u";
  r.rumor = "dead_voters";
  r.exposure_count = e;
  r.first_share_exposure = t;
  return r;
}

// Independent recount of the curve definition, straight off the panel.
std::vector<SharingCurvePoint> brute_force_curve(
    const std::vector<ExposureRecord>& panel, std::uint64_t k_max) {
  std::vector<SharingCurvePoint> out;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    std::uint64_t n_k = 0, shared = 0;
    for (const auto& r : panel) {
      if (r.exposure_count < k) continue;
      ++n_k;
      if (r.first_share_exposure.has_value() && *r.first_share_exposure <= k)
        ++shared;
    }
    if (n_k > 0)
      out.push_back({k, static_cast<double>(shared) / n_k, n_k});
  }
  return out;
}

bool curves_equal(const std::vector<SharingCurvePoint>& a,
                  const std::vector<SharingCurvePoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].k != b[i].k || a[i].sample_size != b[i].sample_size ||
        a[i].probability != b[i].probability)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_panel") {
  SUBCASE("single exposure then share") {
    auto g = graph_with_edge("v", "u");
    std::vector<PostRecord> posts = {rumor("p0", "v", 1), repost("r0", "u", 2, "p0")};
    auto panel = build_panel(g, posts);
    ExposureRecord u_rec;
    for (const auto& r : panel)
      if (r.user == "u") u_rec = r;
    CHECK(u_rec.exposure_count == 1);
    CHECK(u_rec.first_share_exposure == 1);
  }

  SUBCASE("never shares") {
    auto g = graph_with_edge("v", "u");
    std::vector<PostRecord> posts = {rumor("p0", "v", 1), rumor("p1", "v", 3),
                                     rumor("p2", "v", 5)};
    auto panel = build_panel(g, posts);
    ExposureRecord u_rec;
    for (const auto& r : panel)
      if (r.user == "u") u_rec = r;
    CHECK(u_rec.exposure_count == 3);
    CHECK_FALSE(u_rec.first_share_exposure.has_value());
  }

  SUBCASE("originator gets T=0") {
    InformationGraph g;
    g.add_user(user("u"));
    std::vector<PostRecord> posts = {rumor("p0", "u", 1)};
    auto panel = build_panel(g, posts);
    REQUIRE(panel.size() == 1);
    CHECK(panel[0].exposure_count == 0);
    CHECK(panel[0].first_share_exposure == 0);
  }

  SUBCASE("same-second impression orders impression-first") {
    auto g = graph_with_edge("v", "u");
    std::vector<PostRecord> posts = {rumor("p0", "v", 2), repost("r0", "u", 2, "p0")};
    auto panel = build_panel(g, posts);
    ExposureRecord u_rec;
    for (const auto& r : panel)
      if (r.user == "u") u_rec = r;
    CHECK(u_rec.first_share_exposure == 1);
  }

  SUBCASE("post-share impressions still count into E") {
    auto g = graph_with_edge("v", "u");
    std::vector<PostRecord> posts = {rumor("p0", "v", 1), repost("r0", "u", 2, "p0"),
                                     rumor("p1", "v", 5), rumor("p2", "v", 6)};
    auto panel = build_panel(g, posts);
    ExposureRecord u_rec;
    for (const auto& r : panel)
      if (r.user == "u") u_rec = r;
    CHECK(u_rec.exposure_count == 3);
    CHECK(u_rec.first_share_exposure == 1);
  }

  SUBCASE("categories tracked independently") {
    auto g = graph_with_edge("v", "u");
    std::vector<PostRecord> posts = {
        rumor("p0", "v", 1, RumorCategory::DeadVoters),
        rumor("p1", "v", 2, RumorCategory::DropBoxTampering),
        repost("r0", "u", 3, "p0")};
    auto panel = build_panel(g, posts);
    int u_records = 0;
    for (const auto& r : panel)
      if (r.user == "u") ++u_records;
    CHECK(u_records == 2);
  }

  SUBCASE("unlabeled posts rejected") {
    auto g = graph_with_edge("v", "u");
    PostRecord plain;
    plain.post_id = "p0";
    plain.author = "v";
    plain.timestamp = 1;
    plain.content = "x";
    CHECK_THROWS_AS(build_panel(g, {plain}), InputError);
  }
}

TEST_CASE("sharing_curve") {
  SUBCASE("nobody shares") {
    std::vector<ExposureRecord> panel = {rec(2, std::nullopt), rec(5, std::nullopt)};
    for (const auto& pt : sharing_curve(panel, 5)) CHECK(pt.probability == 0.0);
  }

  SUBCASE("everyone shares at first exposure") {
    std::vector<ExposureRecord> panel = {rec(3, 1), rec(1, 1), rec(7, 1)};
    for (const auto& pt : sharing_curve(panel, 7))
      if (pt.k >= 1) CHECK(pt.probability == doctest::Approx(1.0));
  }

  SUBCASE("three-record derived panel") {
    std::vector<ExposureRecord> panel = {rec(3, 2), rec(3, std::nullopt), rec(1, 1)};
    auto curve = sharing_curve(panel, 3);
    REQUIRE(curve.size() == 4);  // k = 0..3
    CHECK(curve[1].probability == doctest::Approx(1.0 / 3.0));
    CHECK(curve[1].sample_size == 3);
    CHECK(curve[2].probability == doctest::Approx(0.5));
    CHECK(curve[2].sample_size == 2);
    CHECK(curve[3].probability == doctest::Approx(0.5));
  }

  SUBCASE("empty panel") {
    CHECK_THROWS_AS(sharing_curve({}, 3), EmptyInputError);
  }

  SUBCASE("n_k nonincreasing and zero-denominator points omitted") {
    std::vector<ExposureRecord> panel = {rec(1, 1), rec(4, std::nullopt)};
    auto curve = sharing_curve(panel, 10);
    CHECK(curve.back().k == 4);  // k in (4, 10] has no population
    for (std::size_t i = 1; i < curve.size(); ++i)
      CHECK(curve[i].sample_size <= curve[i - 1].sample_size);
  }
}

TEST_CASE("sharing_curve equals brute-force recount on random panels") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ExposureRecord> panel;
    std::size_t n = 1 + rng() % 100;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t e = rng() % 20;
      std::optional<std::uint64_t> t;
      if (rng() % 2) t = rng() % (e + 2);
      panel.push_back(rec(e, t));
    }
    std::uint64_t k_max = 1 + rng() % 25;
    CHECK(curves_equal(sharing_curve(panel, k_max), brute_force_curve(panel, k_max)));
  }
}

TEST_CASE("fixed-cohort curve is nondecreasing") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    // Monotone per-exposure hazard: p(k) = min(0.05k, 0.9).
    std::vector<ExposureRecord> panel;
    std::uint64_t cohort_min = 8;
    for (int i = 0; i < 150; ++i) {
      std::uint64_t e = cohort_min + rng() % 10;
      std::optional<std::uint64_t> t;
      for (std::uint64_t k = 1; k <= e; ++k) {
        if (unit(rng) < std::min(0.05 * k, 0.9)) {
          t = k;
          break;
        }
      }
      panel.push_back(rec(e, t));
    }
    auto curve = sharing_curve(panel, cohort_min);
    for (std::size_t i = 1; i < curve.size(); ++i)
      CHECK(curve[i].probability >= curve[i - 1].probability - 1e-12);
  }
}

TEST_CASE("diffusion_timeline") {
  InformationGraph g;  // timelines read only the post table

  SUBCASE("direct cascade of three reposts") {
    std::vector<PostRecord> posts = {
        rumor("root", "v", 100), repost("r1", "a", 110, "root"),
        repost("r2", "b", 120, "root"), repost("r3", "c", 130, "root")};
    auto tl = diffusion_timeline("root", posts, g, 3600, 3600);
    REQUIRE(tl.points.size() == 3);
    CHECK(tl.points.back().second == 3);
    CHECK(tl.points.back().first == 30);
    CHECK(tl.secondary_posters.empty());
  }

  SUBCASE("secondary post pulls its reposts into the series") {
    std::vector<PostRecord> posts = {
        rumor("root", "v", 100), rumor("sec", "w", 3700, RumorCategory::DeadVoters),
        repost("r1", "a", 3710, "sec"), repost("r2", "b", 3720, "sec")};
    auto tl = diffusion_timeline("root", posts, g, 24 * 3600, 24 * 3600);
    REQUIRE(tl.points.size() == 2);
    CHECK(tl.points[0].first == 3610);
    REQUIRE(tl.secondary_posters.size() == 1);
    CHECK(tl.secondary_posters[0] == std::pair<UserId, Timestamp>{"w", 3600});
  }

  SUBCASE("different-category original is not secondary") {
    std::vector<PostRecord> posts = {
        rumor("root", "v", 100),
        rumor("other", "w", 200, RumorCategory::SoftwareSecurity),
        repost("r1", "a", 300, "other")};
    auto tl = diffusion_timeline("root", posts, g, 3600, 3600);
    CHECK(tl.points.empty());
    CHECK(tl.secondary_posters.empty());
  }

  SUBCASE("no reposts, flat series") {
    std::vector<PostRecord> posts = {rumor("root", "v", 100)};
    auto tl = diffusion_timeline("root", posts, g, 3600, 3600);
    CHECK(tl.points.empty());
  }

  SUBCASE("reposts beyond the horizon are dropped") {
    std::vector<PostRecord> posts = {rumor("root", "v", 100),
                                     repost("r1", "a", 100 + 7200, "root")};
    auto tl = diffusion_timeline("root", posts, g, 3600, 3600);
    CHECK(tl.points.empty());
  }

  SUBCASE("missing root") {
    CHECK_THROWS_AS(diffusion_timeline("ghost", {rumor("p", "v", 1)}, g, 10, 10),
                    MissingPostError);
  }

  SUBCASE("cumulative series is nondecreasing and totals match") {
    std::mt19937_64 rng(37);
    std::vector<PostRecord> posts = {rumor("root", "v", 1000)};
    std::size_t expected = 0;
    for (int i = 0; i < 40; ++i) {
      Timestamp dt = rng() % 5000;
      posts.push_back(repost("r" + std::to_string(i), "a" + std::to_string(i),
                             1000 + dt, "root"));
      if (dt <= 3600) ++expected;
    }
    auto tl = diffusion_timeline("root", posts, g, 3600, 3600);
    CHECK(tl.points.size() == expected);
    for (std::size_t i = 1; i < tl.points.size(); ++i) {
      CHECK(tl.points[i].first >= tl.points[i - 1].first);
      CHECK(tl.points[i].second == tl.points[i - 1].second + 1);
    }
  }
}
