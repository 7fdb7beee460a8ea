#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rumornet/geolocate.hpp"

using namespace rumornet;

namespace {

UserNode user(const std::string& id) {
  UserNode u;
  u.id = id;
  return u;
}

PostRecord post_with(const std::string& content) {
  PostRecord p;
  p.post_id = "p";
  p.author = "u";
  p.timestamp = 1;
  p.content = content;
  return p;
}

}  // namespace

TEST_CASE("gazetteer parser") {
  GazetteerParser parser;
  CHECK(parser.parse("Dallas, TX") == "TX");
  CHECK(parser.parse("joe_from_ohio") == "OH");
  CHECK(parser.parse("I moved to New York last year") == "NY");
  CHECK(parser.parse("phoenix") == "AZ");
  CHECK(parser.parse("nothing here") == std::nullopt);
  // Lowercase two-letter codes stay ambiguous with ordinary words.
  CHECK(parser.parse("count me in or not") == std::nullopt);
  CHECK(parser.parse("flying to LA tomorrow") == "LA");
}

TEST_CASE("geolocate_user source cascade") {
  GazetteerParser parser;
  auto u = user("u");

  SUBCASE("profile metadata wins") {
    auto a = geolocate_user(u, "Dallas, TX", "joe_from_ohio", {}, {"CA"}, parser);
    REQUIRE(a);
    CHECK(a->state == "TX");
    CHECK(a->source == GeoSource::Metadata);
    CHECK(a->confidence == 1.0);
  }

  SUBCASE("username next") {
    auto a = geolocate_user(u, std::nullopt, "joe_from_ohio", {}, {}, parser);
    REQUIRE(a);
    CHECK(a->state == "OH");
    CHECK(a->source == GeoSource::Username);
    CHECK(a->confidence == 0.9);
  }

  SUBCASE("phrase detection from posts") {
    std::vector<PostRecord> posts = {post_with("happy friday"),
                                     post_with("I live in Tucson and love it")};
    auto a = geolocate_user(u, std::nullopt, "joe123", posts, {}, parser);
    REQUIRE(a);
    CHECK(a->state == "AZ");
    CHECK(a->source == GeoSource::Phrase);
    CHECK(a->confidence == 0.6);
  }

  SUBCASE("frequency needs three mentions and a unique mode") {
    std::vector<PostRecord> posts = {
        post_with("Florida recount news"), post_with("more Florida updates"),
        post_with("Florida again, also texas once")};
    auto a = geolocate_user(u, std::nullopt, "joe123", posts, {}, parser);
    REQUIRE(a);
    CHECK(a->state == "FL");
    CHECK(a->source == GeoSource::Frequency);
    CHECK(a->confidence == 0.2);

    std::vector<PostRecord> two = {post_with("Florida one"), post_with("Florida two")};
    CHECK_FALSE(geolocate_user(u, std::nullopt, "joe123", two, {}, parser));
  }

  SUBCASE("friend inference last, unique mode required") {
    auto a = geolocate_user(u, std::nullopt, "joe123", {}, {"TX", "TX", "CA"}, parser);
    REQUIRE(a);
    CHECK(a->state == "TX");
    CHECK(a->source == GeoSource::Friend);
    CHECK(a->confidence == 0.1);

    CHECK_FALSE(geolocate_user(u, std::nullopt, "joe123", {}, {"TX", "CA"}, parser));
  }

  SUBCASE("no signal, no assignment") {
    CHECK_FALSE(geolocate_user(u, std::nullopt, "joe123", {}, {}, parser));
  }
}

// Property: with several sources present, the winner is always the
// highest-confidence available one, deterministically.
TEST_CASE("source priority over randomized signal combinations") {
  GazetteerParser parser;
  auto u = user("u");
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    bool has_meta = rng() % 2, has_name = rng() % 2, has_phrase = rng() % 2,
         has_freq = rng() % 2, has_friend = rng() % 2;
    std::optional<std::string> profile;
    if (has_meta) profile = "Denver, CO";
    std::string username = has_name ? "guy_from_ohio" : "guy123";
    std::vector<PostRecord> posts;
    if (has_phrase) posts.push_back(post_with("I live in Tucson"));
    if (has_freq) {
      posts.push_back(post_with("Florida news"));
      posts.push_back(post_with("Florida votes"));
      posts.push_back(post_with("Florida recount"));
    }
    std::vector<std::string> friends;
    if (has_friend) friends = {"TX", "TX"};

    auto a = geolocate_user(u, profile, username, posts, friends, parser);
    auto b = geolocate_user(u, profile, username, posts, friends, parser);
    CHECK(a == b);  // deterministic
    if (has_meta) {
      REQUIRE(a);
      CHECK(a->source == GeoSource::Metadata);
    } else if (has_name) {
      REQUIRE(a);
      CHECK(a->source == GeoSource::Username);
    } else if (has_phrase) {
      REQUIRE(a);
      CHECK(a->source == GeoSource::Phrase);
    } else if (has_freq) {
      REQUIRE(a);
      CHECK(a->source == GeoSource::Frequency);
    } else if (has_friend) {
      REQUIRE(a);
      CHECK(a->source == GeoSource::Friend);
    } else {
      CHECK_FALSE(a);
    }
    if (a) {
      double c = a->confidence;
      CHECK((c == 1.0 || c == 0.9 || c == 0.6 || c == 0.2 || c == 0.1));
    }
  }
}

TEST_CASE("geolocation_report") {
  GeoAssignment meta{"a", "TX", GeoSource::Metadata, 1.0};
  GeoAssignment fr{"b", "CA", GeoSource::Friend, 0.1};

  SUBCASE("coverage arithmetic") {
    std::vector<std::optional<GeoAssignment>> as = {meta, meta, fr, std::nullopt};
    auto r = geolocation_report(as);
    CHECK(r.coverage == doctest::Approx(0.75));
    CHECK(r.per_source[GeoSource::Metadata] == 2);
    CHECK(r.per_source[GeoSource::Friend] == 1);
    CHECK(r.unassigned == 1);
  }

  SUBCASE("all unassigned") {
    std::vector<std::optional<GeoAssignment>> as = {std::nullopt, std::nullopt};
    CHECK(geolocation_report(as).coverage == doctest::Approx(0.0));
  }

  SUBCASE("survey-style proportions round-trip exactly") {
    // 10000 users at the reported per-source proportions.
    std::vector<std::optional<GeoAssignment>> as;
    auto push = [&](GeoSource s, int count) {
      for (int i = 0; i < count; ++i)
        as.push_back(GeoAssignment{"u", "TX", s, source_confidence(s)});
    };
    push(GeoSource::Metadata, 2779);
    push(GeoSource::Friend, 444);
    push(GeoSource::Username, 93);
    push(GeoSource::Frequency, 23);
    push(GeoSource::Phrase, 19);
    for (int i = 0; i < 10000 - 3358; ++i) as.push_back(std::nullopt);
    auto r = geolocation_report(as);
    CHECK(r.total == 10000);
    CHECK(r.per_source[GeoSource::Metadata] == 2779);
    CHECK(r.per_source[GeoSource::Friend] == 444);
    CHECK(r.coverage == doctest::Approx(0.3358));
  }
}
