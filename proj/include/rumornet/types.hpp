#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace rumornet {

using UserId = std::string;
using PostId = std::string;
using Timestamp = std::int64_t;  // UTC seconds since epoch

enum class Role { Seed, Spreader, Infected, Ordinary };

const char* role_name(Role r);

// The five CISA election rumor classes.
enum class RumorCategory {
  DirtyVoterRolls,
  BallotMailInFraud,
  DropBoxTampering,
  SoftwareSecurity,
  DeadVoters,
};

inline constexpr int kRumorCategoryCount = 5;

const char* category_name(RumorCategory c);
std::optional<RumorCategory> category_from_name(const std::string& name);

struct UserNode {
  UserId id;
  std::uint64_t follower_count = 0;
  Role role = Role::Ordinary;
  std::optional<std::string> state;       // two-letter US state code
  std::optional<double> geo_confidence;   // present iff state present

  bool operator==(const UserNode&) const = default;
};

// One Truth (repost_of absent) or ReTruth (repost_of present).
struct PostRecord {
  PostId post_id;
  UserId author;
  Timestamp timestamp = 0;
  std::string content;
  std::optional<PostId> repost_of;
  std::optional<bool> rumor_label;
  std::optional<RumorCategory> rumor_category;

  bool is_repost() const { return repost_of.has_value(); }
  bool is_rumor() const { return rumor_label.value_or(false); }

  bool operator==(const PostRecord&) const = default;
};

// Stable 64-bit FNV-1a content hash, used to key verifier fixtures.
std::uint64_t content_hash(const std::string& content);

}  // namespace rumornet
