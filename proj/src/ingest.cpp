#include "rumornet/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace rumornet {

namespace {

using nlohmann::json;

// Minimal RFC-4180 style field splitter (handles quoted fields with commas
// and doubled quotes).
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

// Validates cross-field invariants; returns a reason on failure.
std::optional<std::string> validate(const PostRecord& p) {
  if (p.post_id.empty()) return "empty post_id";
  if (p.author.empty()) return "empty author";
  if (p.timestamp <= 0) return "timestamp must be > 0";
  if (p.repost_of && *p.repost_of == p.post_id)
    return "repost_of references itself";
  if (p.rumor_category && !p.rumor_label.value_or(false))
    return "rumor_category present without rumor_label=true";
  return std::nullopt;
}

std::optional<PostRecord> parse_jsonl_row(const std::string& line,
                                          std::string& reason) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    reason = "invalid JSON object";
    return std::nullopt;
  }
  PostRecord p;
  try {
    p.post_id = j.at("post_id").get<std::string>();
    p.author = j.at("author").get<std::string>();
    p.timestamp = j.at("timestamp").get<std::int64_t>();
    p.content = j.at("content").get<std::string>();
    if (j.contains("repost_of") && !j["repost_of"].is_null())
      p.repost_of = j["repost_of"].get<std::string>();
    if (j.contains("rumor_label") && !j["rumor_label"].is_null())
      p.rumor_label = j["rumor_label"].get<bool>();
    if (j.contains("rumor_category") && !j["rumor_category"].is_null()) {
      auto c = category_from_name(j["rumor_category"].get<std::string>());
      if (!c) {
        reason = "unknown rumor_category";
        return std::nullopt;
      }
      p.rumor_category = c;
    }
  } catch (const json::exception& e) {
    reason = e.what();
    return std::nullopt;
  }
  if (auto r = validate(p)) {
    reason = *r;
    return std::nullopt;
  }
  return p;
}

std::optional<PostRecord> parse_csv_row(const std::string& line,
                                        std::string& reason) {
  auto f = split_csv_line(line);
  if (f.size() != 7) {
    reason = "expected 7 columns, got " + std::to_string(f.size());
    return std::nullopt;
  }
  PostRecord p;
  p.post_id = f[0];
  p.author = f[1];
  try {
    p.timestamp = std::stoll(f[2]);
  } catch (...) {
    reason = "bad timestamp";
    return std::nullopt;
  }
  p.content = f[3];
  if (!f[4].empty()) p.repost_of = f[4];
  if (!f[5].empty()) {
    if (f[5] == "true") p.rumor_label = true;
    else if (f[5] == "false") p.rumor_label = false;
    else {
      reason = "bad rumor_label";
      return std::nullopt;
    }
  }
  if (!f[6].empty()) {
    auto c = category_from_name(f[6]);
    if (!c) {
      reason = "unknown rumor_category";
      return std::nullopt;
    }
    p.rumor_category = c;
  }
  if (auto r = validate(p)) {
    reason = *r;
    return std::nullopt;
  }
  return p;
}

}  // namespace

LoadResult load_posts(const std::string& path, PostFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  LoadResult result;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_rows = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (format == PostFormat::Csv && first && line.rfind("post_id,", 0) == 0) {
      first = false;
      continue;  // header row
    }
    first = false;
    ++data_rows;
    std::string reason;
    auto p = format == PostFormat::Jsonl ? parse_jsonl_row(line, reason)
                                         : parse_csv_row(line, reason);
    if (p) {
      result.records.push_back(std::move(*p));
    } else {
      result.rejects.push_back({line_no, reason});
    }
  }
  if (data_rows > 0 && result.rejects.size() * 2 > data_rows)
    throw FormatError(path + ": more than 50% malformed rows (" +
                      std::to_string(result.rejects.size()) + "/" +
                      std::to_string(data_rows) + ")");
  return result;
}

std::string post_to_jsonl(const PostRecord& post) {
  json j;
  j["post_id"] = post.post_id;
  j["author"] = post.author;
  j["timestamp"] = post.timestamp;
  j["content"] = post.content;
  if (post.repost_of) j["repost_of"] = *post.repost_of;
  if (post.rumor_label) j["rumor_label"] = *post.rumor_label;
  if (post.rumor_category) j["rumor_category"] = category_name(*post.rumor_category);
  return j.dump();
}

void write_posts_jsonl(const std::string& path,
                       const std::vector<PostRecord>& posts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& p : posts) out << post_to_jsonl(p) << '\n';
}

std::vector<UserNode> load_users_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<UserNode> users;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("id,", 0) == 0) continue;
    auto f = split_csv_line(line);
    if (f.size() < 2)
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad user row");
    UserNode u;
    u.id = f[0];
    try {
      u.follower_count = std::stoull(f[1]);
    } catch (...) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad follower_count");
    }
    if (f.size() > 2 && !f[2].empty()) {
      u.state = f[2];
      u.geo_confidence = (f.size() > 3 && !f[3].empty()) ? std::stod(f[3]) : 1.0;
    }
    users.push_back(std::move(u));
  }
  return users;
}

void write_users_csv(const std::string& path, const std::vector<UserNode>& users) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "id,follower_count,state,geo_confidence\n";
  char buf[32];
  for (const auto& u : users) {
    out << csv_escape(u.id) << ',' << u.follower_count << ',';
    if (u.state) out << *u.state;
    out << ',';
    if (u.geo_confidence) {
      std::snprintf(buf, sizeof buf, "%.2f", *u.geo_confidence);
      out << buf;
    }
    out << '\n';
  }
}

std::unordered_map<PostId, const PostRecord*> index_posts(
    const std::vector<PostRecord>& posts) {
  std::unordered_map<PostId, const PostRecord*> by_id;
  by_id.reserve(posts.size());
  for (const auto& p : posts) by_id[p.post_id] = &p;
  return by_id;
}

namespace {

// Follows a repost chain to its original post. Cycle-guarded; returns null
// when the chain dangles.
const PostRecord* chain_root(const PostRecord& post,
                             const std::unordered_map<PostId, const PostRecord*>& by_id) {
  const PostRecord* cur = &post;
  std::unordered_set<const PostRecord*> seen;
  while (cur->repost_of) {
    if (!seen.insert(cur).second) return nullptr;
    auto it = by_id.find(*cur->repost_of);
    if (it == by_id.end()) return nullptr;
    cur = it->second;
  }
  return cur;
}

}  // namespace

std::optional<RumorCategory> resolve_category(
    const PostRecord& post,
    const std::unordered_map<PostId, const PostRecord*>& by_id) {
  if (post.rumor_category) return post.rumor_category;
  const PostRecord* root = chain_root(post, by_id);
  if (root && root != &post) return root->rumor_category;
  return std::nullopt;
}

InformationGraph build_graph(const std::vector<PostRecord>& posts,
                             const std::vector<UserNode>& users) {
  InformationGraph g;
  for (const auto& u : users) g.add_user(u);
  for (const auto& p : posts) {
    if (!g.has_node(p.author)) throw MissingNodeError(p.author);
  }

  auto by_id = index_posts(posts);
  for (const auto& p : posts) {
    if (!p.repost_of) continue;
    auto it = by_id.find(*p.repost_of);
    if (it == by_id.end()) continue;  // dangling chain, no resolvable author
    const PostRecord* parent = it->second;
    const PostRecord* root = chain_root(*parent, by_id);
    if (!root) continue;
    // Both the immediate source and (for chained reposts) the original
    // author are impression channels onto the resharer.
    std::set<UserId> credited{parent->author, root->author};
    for (const auto& source : credited) {
      if (source == p.author) continue;
      g.add_edge(source, p.author, 1);
    }
  }
  return g;
}

DatasetSummary dataset_summary(const std::vector<PostRecord>& posts) {
  DatasetSummary s;
  std::unordered_set<UserId> users;
  for (const auto& p : posts) {
    users.insert(p.author);
    if (p.is_repost()) {
      ++s.retruth_count;
      if (p.is_rumor()) ++s.rumor_retruth_count;
    } else {
      ++s.truth_count;
      if (p.is_rumor()) ++s.rumor_truth_count;
    }
  }
  s.user_count = users.size();
  if (s.truth_count > 0)
    s.retruth_ratio = static_cast<double>(s.retruth_count) / s.truth_count;
  if (s.rumor_truth_count > 0)
    s.rumor_retruth_ratio =
        static_cast<double>(s.rumor_retruth_count) / s.rumor_truth_count;
  return s;
}

DatasetSummary summary_from_counts(std::uint64_t truths, std::uint64_t retruths,
                                   std::uint64_t rumor_truths,
                                   std::uint64_t rumor_retruths) {
  DatasetSummary s;
  s.truth_count = truths;
  s.retruth_count = retruths;
  s.rumor_truth_count = rumor_truths;
  s.rumor_retruth_count = rumor_retruths;
  if (truths > 0) s.retruth_ratio = static_cast<double>(retruths) / truths;
  if (rumor_truths > 0)
    s.rumor_retruth_ratio = static_cast<double>(rumor_retruths) / rumor_truths;
  return s;
}

void assign_roles_from_posts(InformationGraph& graph,
                             const std::vector<PostRecord>& posts) {
  auto by_id = index_posts(posts);
  std::unordered_set<UserId> originators;
  std::unordered_set<UserId> reposters;
  for (const auto& p : posts) {
    bool rumor = p.is_rumor() || resolve_category(p, by_id).has_value();
    if (!rumor) continue;
    if (p.is_repost())
      reposters.insert(p.author);
    else
      originators.insert(p.author);
  }
  for (const auto& id : originators)
    if (graph.has_node(id)) graph.node(id).role = Role::Seed;
  for (const auto& id : reposters)
    if (!originators.count(id) && graph.has_node(id))
      graph.node(id).role = Role::Spreader;
}

}  // namespace rumornet
