// rumornet command-line driver. Each subcommand wires library modules into a
// batch run that writes CSV/JSONL artifacts plus a manifest.json into the
// output directory. Identical config and inputs produce byte-identical
// artifacts; the manifest carries the run timestamp and is the only file
// excluded from that guarantee.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rumornet/cascade.hpp"
#include "rumornet/crawler.hpp"
#include "rumornet/detect.hpp"
#include "rumornet/errors.hpp"
#include "rumornet/exposure.hpp"
#include "rumornet/geolocate.hpp"
#include "rumornet/graph.hpp"
#include "rumornet/influence.hpp"
#include "rumornet/ingest.hpp"
#include "rumornet/synth.hpp"
#include "rumornet/types.hpp"

namespace fs = std::filesystem;
using namespace rumornet;

namespace {

bool log_enabled() {
  const char* lvl = std::getenv("RUMORNET_LOG");
  return lvl != nullptr && std::string(lvl) != "quiet" && std::string(lvl) != "error";
}

void log_info(const std::string& msg) {
  if (log_enabled()) std::cerr << "rumornet: " << msg << '\n';
}

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v, int decimals) {
  return v ? fmt(*v, decimals) : std::string{};
}

// Everything the subcommands share. Flat key=value config file keys map
// 1:1 onto the long option names.
struct Options {
  std::string posts_path;
  std::string format = "jsonl";
  std::string users_path;
  std::string follows_path;
  std::string profiles_path;
  std::string gazetteer_path;
  std::string keywords_path;
  std::string verifier_fixture_path;
  std::string populations_path;
  std::string margins_path;
  std::string out_dir = "out";

  double tau = 0.5;
  std::vector<double> thetas = {0.25, 0.5, 0.75};
  std::vector<std::size_t> topk = {10, 25, 50};
  std::uint64_t phi_lo = 1;
  std::uint64_t phi_hi = 10;
  std::uint64_t rng_seed = 1;
  std::size_t max_iterations = 100;
  Timestamp horizon = 86400;
  Timestamp similarity_window = 3600;
  std::uint64_t k_max = 20;
  std::string root_post;

  // validate
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double prevalence = -1.0;  // <0 means "not given"

  // crawl-sim
  std::size_t nodes = 200;
  std::size_t mean_degree = 4;
  std::size_t max_users = 100;
  std::size_t per_user_cap = 20;
  std::size_t batch_size = 25;
  double rumor_fraction = 0.05;
  std::size_t max_posts_per_user = 6;
};

class Artifacts {
 public:
  Artifacts(const Options& opts, const std::string& subcommand)
      : dir_(opts.out_dir), subcommand_(subcommand) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string());
  }

  void write(const std::string& name, const std::string& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir_ / name).string());
    out << body;
    if (!out) throw IoError("short write to " + (dir_ / name).string());
    log_info("wrote " + (dir_ / name).string());
  }

  void note_input(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::string bytes{std::istreambuf_iterator<char>(in),
                      std::istreambuf_iterator<char>()};
    inputs_[path] = content_hash(bytes);
  }

  void note_config(const std::string& key, const std::string& value) {
    config_[key] = value;
  }

  void finish() {
    nlohmann::ordered_json manifest;
    manifest["tool"] = "rumornet";
    manifest["version"] = "1.0.0";
    manifest["subcommand"] = subcommand_;
    manifest["generated_at"] = static_cast<std::int64_t>(std::time(nullptr));
    manifest["config"] = config_;
    nlohmann::ordered_json digests = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : inputs_) digests[path] = digest;
    manifest["input_digests"] = digests;
    write("manifest.json", manifest.dump(2) + "\n");
  }

 private:
  fs::path dir_;
  std::string subcommand_;
  std::map<std::string, std::string> config_;
  std::map<std::string, std::uint64_t> inputs_;
};

PostFormat parse_format(const std::string& name) {
  if (name == "jsonl") return PostFormat::Jsonl;
  if (name == "csv") return PostFormat::Csv;
  throw ConfigError("format must be jsonl or csv, got: " + name);
}

std::vector<PostRecord> load_posts_required(const Options& opts, Artifacts& art) {
  if (opts.posts_path.empty()) throw ConfigError("missing required option: posts");
  art.note_input(opts.posts_path);
  art.note_config("posts", opts.posts_path);
  art.note_config("format", opts.format);
  auto loaded = load_posts(opts.posts_path, parse_format(opts.format));
  log_info("loaded " + std::to_string(loaded.records.size()) + " posts, " +
           std::to_string(loaded.rejects.size()) + " rejects");
  return std::move(loaded.records);
}

std::vector<UserNode> load_users_required(const Options& opts, Artifacts& art) {
  if (opts.users_path.empty()) throw ConfigError("missing required option: users");
  art.note_input(opts.users_path);
  art.note_config("users", opts.users_path);
  return load_users_csv(opts.users_path);
}

// state -> number CSV with a header row, used for populations and margins.
template <typename T>
std::map<std::string, T> load_state_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::map<std::string, T> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line_no == 1) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected state,value");
    try {
      table[line.substr(0, comma)] =
          static_cast<T>(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad value");
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Options& opts) {
  Artifacts art(opts, "ingest");
  if (opts.posts_path.empty()) throw ConfigError("missing required option: posts");
  art.note_input(opts.posts_path);
  art.note_config("posts", opts.posts_path);
  art.note_config("format", opts.format);
  auto loaded = load_posts(opts.posts_path, parse_format(opts.format));

  std::string rejects;
  for (const auto& r : loaded.rejects) {
    nlohmann::ordered_json j;
    j["line_no"] = r.line_no;
    j["reason"] = r.reason;
    rejects += j.dump() + "\n";
  }
  art.write("rejects.jsonl", rejects);

  auto s = dataset_summary(loaded.records);
  std::string summary = "metric,value\n";
  summary += "user_count," + std::to_string(s.user_count) + "\n";
  summary += "truth_count," + std::to_string(s.truth_count) + "\n";
  summary += "retruth_count," + std::to_string(s.retruth_count) + "\n";
  summary += "rumor_truth_count," + std::to_string(s.rumor_truth_count) + "\n";
  summary += "rumor_retruth_count," + std::to_string(s.rumor_retruth_count) + "\n";
  summary += "retruth_ratio," + fmt_opt(s.retruth_ratio, 4) + "\n";
  summary += "rumor_retruth_ratio," + fmt_opt(s.rumor_retruth_ratio, 4) + "\n";
  art.write("summary.csv", summary);

  if (!opts.users_path.empty()) {
    auto users = load_users_required(opts, art);
    auto graph = build_graph(loaded.records, users);
    std::string edges = "source,target,weight\n";
    for (const auto& id : graph.user_ids())
      for (const auto& [src, w] : graph.in_neighbors(id))
        edges += src + "," + id + "," + std::to_string(w) + "\n";
    art.write("edges.csv", edges);
  }
  art.finish();
  return 0;
}

void write_classifications(Artifacts& art, const BatchOutcome& outcome) {
  std::string lines;
  for (const auto& r : outcome.results) {
    nlohmann::ordered_json j;
    j["post_id"] = r.post_id;
    j["stage"] = stage_name(r.stage_reached);
    if (r.category)
      j["category"] = category_name(*r.category);
    else
      j["category"] = nullptr;
    j["coarse_score"] = fmt(r.coarse_score, 6);
    j["keyword_hit"] = r.keyword_hit;
    lines += j.dump() + "\n";
  }
  art.write("classifications.jsonl", lines);

  std::string dead;
  for (const auto& id : outcome.dead_letter) dead += id + "\n";
  art.write("dead_letter.txt", dead);

  auto stats = funnel_stats(outcome.results);
  std::string funnel = "metric,value\n";
  funnel += "candidate_fraction," + fmt(stats.candidate_fraction, 4) + "\n";
  funnel += "verifier_call_reduction," + fmt(stats.verifier_call_reduction, 4) + "\n";
  art.write("funnel.csv", funnel);
}

BatchOutcome run_detection(const Options& opts, Artifacts& art,
                           const std::vector<PostRecord>& posts) {
  KeywordIndex index;
  if (!opts.keywords_path.empty()) {
    art.note_input(opts.keywords_path);
    art.note_config("keywords", opts.keywords_path);
    index = KeywordIndex::from_file(opts.keywords_path);
  } else {
    index = KeywordIndex::starter();
  }
  MockVerifier verifier;
  if (!opts.verifier_fixture_path.empty()) {
    art.note_input(opts.verifier_fixture_path);
    art.note_config("verifier_fixture", opts.verifier_fixture_path);
    verifier = MockVerifier::from_fixture_file(opts.verifier_fixture_path);
  }
  art.note_config("tau", fmt(opts.tau, 4));
  KeywordDensityScorer scorer(index);
  BatchOptions batch;
  batch.tau = opts.tau;
  return classify_batch(posts, scorer, index, verifier, batch);
}

int cmd_detect(const Options& opts) {
  Artifacts art(opts, "detect");
  auto posts = load_posts_required(opts, art);
  if (posts.empty()) throw EmptyInputError("detect: no posts loaded");
  write_classifications(art, run_detection(opts, art, posts));
  art.finish();
  return 0;
}

int cmd_geolocate(const Options& opts) {
  Artifacts art(opts, "geolocate");
  auto users = load_users_required(opts, art);

  std::map<UserId, std::vector<PostRecord>> posts_by_author;
  if (!opts.posts_path.empty()) {
    for (auto& p : load_posts_required(opts, art))
      posts_by_author[p.author].push_back(std::move(p));
  }

  // Optional profile sidecar: user,location,username per row.
  std::map<UserId, std::pair<std::string, std::string>> profiles;
  if (!opts.profiles_path.empty()) {
    art.note_input(opts.profiles_path);
    art.note_config("profiles", opts.profiles_path);
    std::ifstream in(opts.profiles_path);
    if (!in) throw IoError("cannot open " + opts.profiles_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line_no == 1) continue;
      auto c1 = line.find(',');
      auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
      if (c2 == std::string::npos)
        throw FormatError(opts.profiles_path + ":" + std::to_string(line_no) +
                          ": expected user,location,username");
      profiles[line.substr(0, c1)] = {line.substr(c1 + 1, c2 - c1 - 1),
                                      line.substr(c2 + 1)};
    }
  }

  std::map<UserId, std::set<UserId>> friends;
  if (!opts.follows_path.empty()) {
    art.note_input(opts.follows_path);
    art.note_config("follows", opts.follows_path);
    std::ifstream in(opts.follows_path);
    if (!in) throw IoError("cannot open " + opts.follows_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line_no == 1) continue;
      auto comma = line.find(',');
      if (comma == std::string::npos)
        throw FormatError(opts.follows_path + ":" + std::to_string(line_no) +
                          ": expected follower,followee");
      UserId a = line.substr(0, comma), b = line.substr(comma + 1);
      friends[a].insert(b);
      friends[b].insert(a);
    }
  }

  GazetteerParser parser;
  if (!opts.gazetteer_path.empty()) {
    art.note_input(opts.gazetteer_path);
    art.note_config("gazetteer", opts.gazetteer_path);
    parser = GazetteerParser::from_csv(opts.gazetteer_path);
  }

  static const std::vector<PostRecord> no_posts;
  auto locate = [&](const UserNode& u, const std::vector<std::string>& friend_states) {
    std::optional<std::string> location;
    std::string username = u.id;
    if (auto it = profiles.find(u.id); it != profiles.end()) {
      if (!it->second.first.empty()) location = it->second.first;
      if (!it->second.second.empty()) username = it->second.second;
    }
    auto pit = posts_by_author.find(u.id);
    const auto& posts = pit == posts_by_author.end() ? no_posts : pit->second;
    return geolocate_user(u, location, username, posts, friend_states, parser);
  };

  // Direct signals first; the friend source then draws on those results so
  // one unlocated friend does not poison another.
  std::map<UserId, std::optional<GeoAssignment>> assigned;
  for (const auto& u : users) assigned[u.id] = locate(u, {});
  for (const auto& u : users) {
    if (assigned[u.id]) continue;
    std::vector<std::string> friend_states;
    if (auto it = friends.find(u.id); it != friends.end())
      for (const auto& f : it->second)
        if (auto fit = assigned.find(f); fit != assigned.end() && fit->second)
          friend_states.push_back(fit->second->state);
    if (!friend_states.empty()) assigned[u.id] = locate(u, friend_states);
  }

  std::string rows = "user,state,source,confidence\n";
  std::vector<std::optional<GeoAssignment>> all;
  for (const auto& [id, a] : assigned) {
    all.push_back(a);
    if (a)
      rows += id + "," + a->state + "," + source_name(a->source) + "," +
              fmt(a->confidence, 2) + "\n";
  }
  art.write("assignments.csv", rows);

  auto report = geolocation_report(all);
  std::string rep = "metric,value\n";
  for (const auto& [source, count] : report.per_source)
    rep += std::string(source_name(source)) + "," + std::to_string(count) + "\n";
  rep += "unassigned," + std::to_string(report.unassigned) + "\n";
  rep += "total," + std::to_string(report.total) + "\n";
  rep += "coverage," + fmt(report.coverage, 4) + "\n";
  art.write("report.csv", rep);
  art.finish();
  return 0;
}

void write_influence(Artifacts& art, const Options& opts,
                     const std::vector<PostRecord>& posts,
                     const std::vector<UserNode>& users) {
  auto graph = build_graph(posts, users);
  PostIndex index(posts);

  std::string header = "user,base";
  for (double theta : opts.thetas) {
    std::ostringstream name;
    name << "theta_" << theta;
    header += "," + name.str();
  }
  for (std::size_t k : opts.topk) header += ",top" + std::to_string(k);

  std::string rows = header + "\n";
  for (const auto& id : graph.user_ids()) {
    if (index.rumor_posts(id).empty()) continue;
    rows += id + "," + fmt(influence(id, graph, index).value, 2);
    for (double theta : opts.thetas)
      rows += "," + fmt(influence_overlap_adjusted(id, graph, index, theta).value, 2);
    for (std::size_t k : opts.topk)
      rows += "," + fmt(influence_topk(id, graph, index, k).value, 2);
    rows += "\n";
  }
  art.write("influence.csv", rows);
}

int cmd_influence(const Options& opts) {
  Artifacts art(opts, "influence");
  auto posts = load_posts_required(opts, art);
  auto users = load_users_required(opts, art);
  write_influence(art, opts, posts, users);

  if (!opts.populations_path.empty()) {
    art.note_input(opts.populations_path);
    art.note_config("populations", opts.populations_path);
    auto populations = load_state_table<std::uint64_t>(opts.populations_path);
    std::map<std::string, double> margins;
    if (!opts.margins_path.empty()) {
      art.note_input(opts.margins_path);
      art.note_config("margins", opts.margins_path);
      margins = load_state_table<double>(opts.margins_path);
    }
    std::map<UserId, std::string> user_states;
    for (const auto& u : users)
      if (u.state) user_states[u.id] = *u.state;
    auto rates = state_rumor_rates(posts, user_states, populations, margins);
    std::string rows = "state,rate,margin,geolocated_users\n";
    for (const auto& r : rates)
      rows += r.state + "," + fmt(r.rumor_posts_per_100k, 4) + "," +
              fmt_opt(r.vote_margin, 4) + "," + std::to_string(r.geolocated_users) +
              "\n";
    art.write("state_rates.csv", rows);
  }
  art.finish();
  return 0;
}

void write_curve(Artifacts& art, const Options& opts,
                 const std::vector<PostRecord>& posts,
                 const std::vector<UserNode>& users) {
  auto graph = build_graph(posts, users);
  auto panel = build_panel(graph, posts);
  auto curve = sharing_curve(panel, opts.k_max);
  std::string rows = "k,probability,n_k\n";
  for (const auto& pt : curve)
    rows += std::to_string(pt.k) + "," + fmt(pt.probability, 6) + "," +
            std::to_string(pt.sample_size) + "\n";
  art.write("curve.csv", rows);
}

int cmd_exposure_curve(const Options& opts) {
  Artifacts art(opts, "exposure-curve");
  auto posts = load_posts_required(opts, art);
  auto users = load_users_required(opts, art);
  art.note_config("k_max", std::to_string(opts.k_max));
  write_curve(art, opts, posts, users);

  if (!opts.root_post.empty()) {
    art.note_config("root", opts.root_post);
    art.note_config("horizon", std::to_string(opts.horizon));
    art.note_config("similarity_window", std::to_string(opts.similarity_window));
    auto graph = build_graph(posts, users);
    auto tl = diffusion_timeline(opts.root_post, posts, graph, opts.horizon,
                                 opts.similarity_window);
    std::string rows = "elapsed_seconds,cumulative_reposts\n";
    for (const auto& [t, n] : tl.points)
      rows += std::to_string(t) + "," + std::to_string(n) + "\n";
    art.write("timeline.csv", rows);
    std::string sec = "user,first_post_elapsed_seconds\n";
    for (const auto& [u, t] : tl.secondary_posters)
      sec += u + "," + std::to_string(t) + "\n";
    art.write("secondary_posters.csv", sec);
  }
  art.finish();
  return 0;
}

void write_sweep(Artifacts& art, const Options& opts, const InformationGraph& graph,
                 const std::set<UserId>& seeds, const std::set<UserId>& spreaders) {
  std::string rows = "phi,final_infected_fraction,iterations_to_converge\n";
  for (std::uint64_t phi = opts.phi_lo; phi <= opts.phi_hi; ++phi) {
    CascadeConfig config;
    config.phi = phi;
    config.max_iterations = opts.max_iterations;
    config.seed_users = seeds;
    config.spreader_users = spreaders;
    auto r = run_cascade(graph, config);
    rows += std::to_string(phi) + "," +
            fmt(r.infected_fraction_per_iteration.back(), 6) + "," +
            std::to_string(r.iterations_run) + "\n";
  }
  art.write("sweep.csv", rows);
}

int cmd_simulate(const Options& opts) {
  Artifacts art(opts, "simulate");
  auto posts = load_posts_required(opts, art);
  auto users = load_users_required(opts, art);
  art.note_config("phi_lo", std::to_string(opts.phi_lo));
  art.note_config("phi_hi", std::to_string(opts.phi_hi));
  art.note_config("max_iterations", std::to_string(opts.max_iterations));
  if (opts.phi_lo < 1 || opts.phi_lo > opts.phi_hi)
    throw ConfigError("bad phi range: phi_lo must be >= 1 and <= phi_hi");

  auto graph = build_graph(posts, users);
  assign_roles_from_posts(graph, posts);
  std::set<UserId> seeds, spreaders;
  for (const auto& id : graph.user_ids()) {
    if (graph.node(id).role == Role::Seed) seeds.insert(id);
    if (graph.node(id).role == Role::Spreader) spreaders.insert(id);
  }
  if (seeds.empty())
    throw ConfigError("simulate: no rumor originators found in posts");
  write_sweep(art, opts, graph, seeds, spreaders);

  // Per-state infection breakdown at the most susceptible threshold, when
  // the users file carries geolocation.
  bool any_state = false;
  for (const auto& u : users) any_state = any_state || u.state.has_value();
  if (any_state) {
    CascadeConfig config;
    config.phi = opts.phi_lo;
    config.max_iterations = opts.max_iterations;
    config.seed_users = seeds;
    config.spreader_users = spreaders;
    auto r = run_cascade(graph, config);
    std::map<std::string, std::pair<std::size_t, std::size_t>> by_state;
    for (const auto& u : users) {
      if (!u.state) continue;
      auto& [infected, total] = by_state[*u.state];
      ++total;
      if (r.final_roles.at(u.id) != Role::Ordinary) ++infected;
    }
    std::string rows = "state,infected_fraction,users\n";
    for (const auto& [state, counts] : by_state)
      rows += state + "," +
              fmt(static_cast<double>(counts.first) / counts.second, 6) + "," +
              std::to_string(counts.second) + "\n";
    art.write("state_infection.csv", rows);
  }
  art.finish();
  return 0;
}

int cmd_crawl_sim(const Options& opts) {
  Artifacts art(opts, "crawl-sim");
  SynthConfig synth;
  synth.node_count = opts.nodes;
  synth.mean_degree = opts.mean_degree;
  synth.rng_seed = opts.rng_seed;
  synth.rumor_fraction = opts.rumor_fraction;
  synth.max_posts_per_user = opts.max_posts_per_user;
  art.note_config("nodes", std::to_string(opts.nodes));
  art.note_config("mean_degree", std::to_string(opts.mean_degree));
  art.note_config("rng_seed", std::to_string(opts.rng_seed));
  art.note_config("max_users", std::to_string(opts.max_users));
  art.note_config("per_user_cap", std::to_string(opts.per_user_cap));

  SimulatedPlatform platform(synth);
  const UserId seed = platform.all_users().front().id;
  auto stored = bfs_crawl(platform, seed, opts.max_users, opts.per_user_cap);
  log_info("crawled " + std::to_string(stored.size()) + " users");

  CrawlState state;
  std::vector<PostRecord> posts;
  Timestamp now = std::numeric_limits<Timestamp>::max() / 2;
  while (state.last_scraped.size() < stored.size()) {
    auto batch = scrape_posts(platform, stored, state, opts.batch_size, now);
    posts.insert(posts.end(), batch.begin(), batch.end());
  }
  std::sort(posts.begin(), posts.end(), [](const auto& a, const auto& b) {
    return std::tie(a.timestamp, a.post_id) < std::tie(b.timestamp, b.post_id);
  });

  write_users_csv((fs::path(opts.out_dir) / "users.csv").string(), stored);
  log_info("wrote users.csv");
  write_posts_jsonl((fs::path(opts.out_dir) / "posts.jsonl").string(), posts);
  log_info("wrote posts.jsonl");
  art.finish();
  return 0;
}

int cmd_validate(const Options& opts) {
  Artifacts art(opts, "validate");
  art.note_config("tp", std::to_string(opts.tp));
  art.note_config("fp", std::to_string(opts.fp));
  art.note_config("tn", std::to_string(opts.tn));
  art.note_config("fn", std::to_string(opts.fn));
  auto m = confusion_metrics(opts.tp, opts.fp, opts.tn, opts.fn);

  std::string rows = "metric,value,percent\n";
  auto push = [&](const char* name, const std::optional<double>& v) {
    rows += std::string(name) + "," + fmt_opt(v, 4) + "," +
            (v ? fmt(*v * 100.0, 2) + "%" : std::string{}) + "\n";
  };
  push("accuracy", m.accuracy);
  push("precision", m.precision);
  push("recall", m.recall);
  push("f1", m.f1);
  push("fdr", m.fdr);
  push("standard_fpr", m.standard_fpr);
  push("fnr", m.fnr);
  if (opts.prevalence >= 0.0) {
    art.note_config("prevalence", fmt(opts.prevalence, 6));
    std::optional<double> ppv;
    if (m.recall && m.standard_fpr)
      ppv = prevalence_adjusted_ppv(*m.recall, 1.0 - *m.standard_fpr,
                                    opts.prevalence);
    push("prevalence_adjusted_ppv", ppv);
  }
  art.write("metrics.csv", rows);
  art.finish();
  return 0;
}

int cmd_report(const Options& opts) {
  Artifacts art(opts, "report");
  auto posts = load_posts_required(opts, art);
  auto users = load_users_required(opts, art);
  if (posts.empty()) throw EmptyInputError("report: no posts loaded");

  auto s = dataset_summary(posts);
  std::string summary = "metric,value\n";
  summary += "user_count," + std::to_string(s.user_count) + "\n";
  summary += "truth_count," + std::to_string(s.truth_count) + "\n";
  summary += "retruth_count," + std::to_string(s.retruth_count) + "\n";
  summary += "rumor_truth_count," + std::to_string(s.rumor_truth_count) + "\n";
  summary += "rumor_retruth_count," + std::to_string(s.rumor_retruth_count) + "\n";
  summary += "retruth_ratio," + fmt_opt(s.retruth_ratio, 4) + "\n";
  summary += "rumor_retruth_ratio," + fmt_opt(s.rumor_retruth_ratio, 4) + "\n";
  art.write("summary.csv", summary);

  write_classifications(art, run_detection(opts, art, posts));
  write_influence(art, opts, posts, users);

  bool any_rumor = false;
  for (const auto& p : posts) any_rumor = any_rumor || p.is_rumor();
  if (any_rumor) {
    write_curve(art, opts, posts, users);
    auto graph = build_graph(posts, users);
    assign_roles_from_posts(graph, posts);
    std::set<UserId> seeds, spreaders;
    for (const auto& id : graph.user_ids()) {
      if (graph.node(id).role == Role::Seed) seeds.insert(id);
      if (graph.node(id).role == Role::Spreader) spreaders.insert(id);
    }
    write_sweep(art, opts, graph, seeds, spreaders);
  } else {
    log_info("no rumor-labeled posts; skipping curve and sweep");
  }
  art.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rumornet: rumor propagation measurement and simulation toolkit"};
  app.set_config("--config", "", "Flat key=value config file; flags override");
  Options opts;

  app.add_option("--posts", opts.posts_path, "Posts file (JSONL or CSV)");
  app.add_option("--format", opts.format, "Posts format: jsonl or csv");
  app.add_option("--users", opts.users_path, "Users CSV");
  app.add_option("--follows", opts.follows_path, "Follows CSV (follower,followee)");
  app.add_option("--profiles", opts.profiles_path,
                 "Profiles CSV (user,location,username)");
  app.add_option("--gazetteer", opts.gazetteer_path, "Gazetteer CSV (place,state)");
  app.add_option("--keywords", opts.keywords_path, "Keyword index file");
  app.add_option("--verifier-fixture", opts.verifier_fixture_path,
                 "Mock verifier fixture JSONL");
  app.add_option("--populations", opts.populations_path, "State populations CSV");
  app.add_option("--margins", opts.margins_path, "State vote margins CSV");
  app.add_option("--out", opts.out_dir, "Output directory");
  app.add_option("--tau", opts.tau, "Coarse score threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--theta", opts.thetas, "Overlap-adjustment thetas");
  app.add_option("--topk", opts.topk, "Top-K truncation sizes");
  app.add_option("--phi-lo", opts.phi_lo, "Sweep lower threshold");
  app.add_option("--phi-hi", opts.phi_hi, "Sweep upper threshold");
  app.add_option("--rng-seed", opts.rng_seed, "RNG seed");
  app.add_option("--max-iterations", opts.max_iterations, "Cascade iteration cap");
  app.add_option("--horizon", opts.horizon, "Timeline horizon, seconds");
  app.add_option("--similarity-window", opts.similarity_window,
                 "Secondary-post window, seconds");
  app.add_option("--kmax", opts.k_max, "Sharing curve maximum exposure");
  app.add_option("--root", opts.root_post, "Root post id for the timeline");
  app.add_option("--tp", opts.tp, "True positives");
  app.add_option("--fp", opts.fp, "False positives");
  app.add_option("--tn", opts.tn, "True negatives");
  app.add_option("--fn", opts.fn, "False negatives");
  app.add_option("--prevalence", opts.prevalence, "Base rate for adjusted PPV");
  app.add_option("--nodes", opts.nodes, "Synthetic network size");
  app.add_option("--mean-degree", opts.mean_degree, "Synthetic mean degree");
  app.add_option("--max-users", opts.max_users, "Crawl user budget");
  app.add_option("--cap", opts.per_user_cap, "Per-user neighbor cap");
  app.add_option("--batch-size", opts.batch_size, "Scrape batch size");
  app.add_option("--rumor-fraction", opts.rumor_fraction,
                 "Synthetic rumor share of originals");
  app.add_option("--max-posts-per-user", opts.max_posts_per_user,
                 "Synthetic per-user post cap");

  std::map<std::string, int (*)(const Options&)> handlers = {
      {"ingest", cmd_ingest},           {"detect", cmd_detect},
      {"geolocate", cmd_geolocate},     {"influence", cmd_influence},
      {"exposure-curve", cmd_exposure_curve}, {"simulate", cmd_simulate},
      {"crawl-sim", cmd_crawl_sim},     {"validate", cmd_validate},
      {"report", cmd_report},
  };
  for (const auto& [name, fn] : handlers)
    app.add_subcommand(name)->fallthrough();
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(name)(opts);
  } catch (const IoError& e) {
    std::cerr << "rumornet " << name << ": " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "rumornet " << name << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "rumornet " << name << ": " << e.what() << '\n';
    return 1;
  }
}
