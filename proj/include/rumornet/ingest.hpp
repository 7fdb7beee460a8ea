#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rumornet/graph.hpp"
#include "rumornet/types.hpp"

namespace rumornet {

enum class PostFormat { Jsonl, Csv };

struct RejectEntry {
  std::size_t line_no;  // 1-based
  std::string reason;
};

struct LoadResult {
  std::vector<PostRecord> records;
  std::vector<RejectEntry> rejects;
};

struct DatasetSummary {
  std::uint64_t user_count = 0;
  std::uint64_t truth_count = 0;
  std::uint64_t retruth_count = 0;
  std::uint64_t rumor_truth_count = 0;
  std::uint64_t rumor_retruth_count = 0;
  std::optional<double> retruth_ratio;        // retruths / truths
  std::optional<double> rumor_retruth_ratio;  // rumor retruths / rumor truths
};

// Malformed rows go to the rejects report, never silently dropped.
// Throws IoError if unreadable, FormatError if >50% of rows are malformed.
LoadResult load_posts(const std::string& path, PostFormat format);

// Canonical JSONL serialization; load(write(x)) round-trips bit-identically.
std::string post_to_jsonl(const PostRecord& post);
void write_posts_jsonl(const std::string& path, const std::vector<PostRecord>& posts);

// Users CSV: id,follower_count,state,geo_confidence (last two optional).
std::vector<UserNode> load_users_csv(const std::string& path);
void write_users_csv(const std::string& path, const std::vector<UserNode>& users);

// Builds the information graph from observed repost activity. Each repost by
// u credits an impression edge from the author of the directly reposted post
// and, for chained reposts, also from the root (original) author. Credits
// pointing back at the resharer are skipped.
InformationGraph build_graph(const std::vector<PostRecord>& posts,
                             const std::vector<UserNode>& users);

DatasetSummary dataset_summary(const std::vector<PostRecord>& posts);

// Same derived ratios, from pre-aggregated counts.
DatasetSummary summary_from_counts(std::uint64_t truths, std::uint64_t retruths,
                                   std::uint64_t rumor_truths,
                                   std::uint64_t rumor_retruths);

// Seeds are authors of original rumor posts, spreaders users whose only rumor
// activity is reposting. Everyone else keeps their current role.
void assign_roles_from_posts(InformationGraph& graph,
                             const std::vector<PostRecord>& posts);

// Resolves the rumor category of a post, following repost chains to the
// original. Returns nullopt for unlabeled content or unresolvable chains.
std::optional<RumorCategory> resolve_category(
    const PostRecord& post,
    const std::unordered_map<PostId, const PostRecord*>& by_id);

std::unordered_map<PostId, const PostRecord*> index_posts(
    const std::vector<PostRecord>& posts);

}  // namespace rumornet
