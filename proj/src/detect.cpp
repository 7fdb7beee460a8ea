#include "rumornet/detect.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "rumornet/errors.hpp"

namespace rumornet {

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Lowercase and collapse runs of whitespace to single spaces.
std::string normalize(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool prev_space = true;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!prev_space) out += ' ';
      prev_space = true;
    } else {
      out += static_cast<char>(std::tolower(c));
      prev_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Case handled by normalization; boundaries are non-word characters.
bool contains_phrase(const std::string& normalized, const std::string& phrase) {
  std::size_t pos = 0;
  while ((pos = normalized.find(phrase, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !word_char(normalized[pos - 1]);
    std::size_t end = pos + phrase.size();
    bool right_ok = end >= normalized.size() || !word_char(normalized[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::FilteredOut: return "filtered_out";
    case Stage::VerifierRejectedPass1: return "verifier_rejected_pass1";
    case Stage::VerifierRejectedPass2: return "verifier_rejected_pass2";
    case Stage::LabeledRumor: return "labeled_rumor";
  }
  return "filtered_out";
}

void KeywordIndex::add_phrase(RumorCategory category, const std::string& phrase) {
  std::string norm = normalize(phrase);
  if (norm.empty()) throw InputError("empty keyword phrase");
  auto& list = phrases_[category];
  if (std::find(list.begin(), list.end(), norm) != list.end())
    throw InputError("duplicate keyword phrase: " + norm);
  list.push_back(norm);
}

const std::vector<std::string>& KeywordIndex::phrases(RumorCategory category) const {
  static const std::vector<std::string> empty;
  auto it = phrases_.find(category);
  return it == phrases_.end() ? empty : it->second;
}

KeywordIndex KeywordIndex::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  KeywordIndex index;
  std::optional<RumorCategory> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      auto c = category_from_name(line.substr(1, line.size() - 2));
      if (!c)
        throw FormatError(path + ":" + std::to_string(line_no) +
                          ": unknown category section");
      current = c;
    } else {
      if (!current)
        throw FormatError(path + ":" + std::to_string(line_no) +
                          ": phrase before any category section");
      index.add_phrase(*current, line);
    }
  }
  return index;
}

// Starter phrases written from the CISA category descriptions. Not the
// production keyword lists, which are unpublished.
KeywordIndex KeywordIndex::starter() {
  KeywordIndex idx;
  using C = RumorCategory;
  for (const char* p : {"voter rolls", "dirty rolls", "voter roll purge",
                        "rolls are never cleaned", "inaccurate voter rolls",
                        "outdated voter rolls", "bloated voter rolls"})
    idx.add_phrase(C::DirtyVoterRolls, p);
  for (const char* p : {"mail-in fraud", "mail in fraud", "absentee fraud",
                        "fraudulent ballots", "unauthorized ballots",
                        "ballot harvesting", "fake mail ballots",
                        "stolen mail ballots"})
    idx.add_phrase(C::BallotMailInFraud, p);
  for (const char* p : {"drop box", "drop boxes", "ballot box stuffing",
                        "dropbox tampering", "stolen drop box"})
    idx.add_phrase(C::DropBoxTampering, p);
  for (const char* p : {"voting machines rigged", "voting software",
                        "machines flipped votes", "hacked voting machines",
                        "dominion machines", "vote flipping",
                        "manipulated at will", "algorithm changed votes"})
    idx.add_phrase(C::SoftwareSecurity, p);
  for (const char* p : {"dead voters", "dead people voted", "dead people voting",
                        "votes from the dead", "deceased voters",
                        "ballots for dead"})
    idx.add_phrase(C::DeadVoters, p);
  return idx;
}

std::set<RumorCategory> keyword_filter(const PostRecord& post,
                                       const KeywordIndex& index) {
  std::set<RumorCategory> hits;
  std::string norm = normalize(post.content);
  for (int i = 0; i < kRumorCategoryCount; ++i) {
    auto c = static_cast<RumorCategory>(i);
    for (const auto& phrase : index.phrases(c)) {
      if (contains_phrase(norm, phrase)) {
        hits.insert(c);
        break;
      }
    }
  }
  return hits;
}

double KeywordDensityScorer::score(const std::string& content) const {
  std::string norm = normalize(content);
  if (norm.empty()) return 0.0;
  std::size_t matched_chars = 0;
  for (int i = 0; i < kRumorCategoryCount; ++i) {
    for (const auto& phrase : index_.phrases(static_cast<RumorCategory>(i))) {
      if (contains_phrase(norm, phrase)) matched_chars += phrase.size();
    }
  }
  double s = static_cast<double>(matched_chars) / static_cast<double>(norm.size());
  return std::min(1.0, s);
}

const std::vector<std::string>& rumor_descriptions() {
  static const std::vector<std::string> descriptions = {
      category_description(RumorCategory::DirtyVoterRolls),
      category_description(RumorCategory::BallotMailInFraud),
      category_description(RumorCategory::DropBoxTampering),
      category_description(RumorCategory::SoftwareSecurity),
      category_description(RumorCategory::DeadVoters),
  };
  return descriptions;
}

const std::string& category_description(RumorCategory c) {
  static const std::string texts[kRumorCategoryCount] = {
      "Election officials don't clean the voter rolls; the rolls are "
      "inaccurate and not updated.",
      "The mail-in/absentee ballot request process can be violated to "
      "receive and cast unauthorized ballots, or prevent authorized "
      "in-person voting.",
      "Drop boxes used to collect mail-in/absentee ballots can be easily "
      "tampered with, stolen, or destroyed.",
      "Voting system software is not reviewed or tested and can be easily "
      "manipulated.",
      "Votes are being cast on behalf of dead people and these votes are "
      "being counted.",
  };
  return texts[static_cast<int>(c)];
}

void MockVerifier::set_answer(const std::string& content, FixtureEntry entry) {
  answers_[content_hash(content)] = entry;
}

MockVerifier MockVerifier::from_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  MockVerifier mock;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad JSON");
    FixtureEntry e;
    e.pass1 = j.value("pass1", false);
    e.pass2 = j.value("pass2", false);
    if (j.contains("category") && !j["category"].is_null())
      e.category = category_from_name(j["category"].get<std::string>());
    mock.answers_[j.at("content_hash").get<std::uint64_t>()] = e;
  }
  return mock;
}

Pass1Result MockVerifier::verify_pass1(const std::string& content,
                                       const std::vector<std::string>&) {
  ++pass1_calls;
  auto it = answers_.find(content_hash(content));
  const FixtureEntry& e = it == answers_.end() ? default_ : it->second;
  return {e.pass1, e.category};
}

bool MockVerifier::verify_pass2(const std::string& content, const std::string&) {
  ++pass2_calls;
  auto it = answers_.find(content_hash(content));
  const FixtureEntry& e = it == answers_.end() ? default_ : it->second;
  return e.pass2;
}

ClassificationResult classify_post(const PostRecord& post,
                                   const CoarseScorer& scorer,
                                   const KeywordIndex& index,
                                   VerifierProvider& verifier, double tau) {
  if (tau < 0.0 || tau > 1.0) throw RangeError("tau must be in [0,1]");
  ClassificationResult result;
  result.post_id = post.post_id;
  result.coarse_score = scorer.score(post.content);
  result.keyword_hit = !keyword_filter(post, index).empty();

  if (result.coarse_score < tau && !result.keyword_hit) {
    result.stage_reached = Stage::FilteredOut;
    return result;
  }

  Pass1Result pass1 = verifier.verify_pass1(post.content, rumor_descriptions());
  if (!pass1.is_rumor) {
    result.stage_reached = Stage::VerifierRejectedPass1;
    return result;
  }
  std::string description =
      pass1.category ? category_description(*pass1.category) : std::string{};
  if (!verifier.verify_pass2(post.content, description)) {
    result.stage_reached = Stage::VerifierRejectedPass2;
    return result;
  }
  result.stage_reached = Stage::LabeledRumor;
  result.category = pass1.category;
  return result;
}

BatchOutcome classify_batch(const std::vector<PostRecord>& posts,
                            const CoarseScorer& scorer, const KeywordIndex& index,
                            VerifierProvider& verifier, const BatchOptions& opts) {
  BatchOutcome out;
  for (const auto& post : posts) {
    bool done = false;
    for (int attempt = 0; attempt < opts.max_attempts && !done; ++attempt) {
      try {
        out.results.push_back(
            classify_post(post, scorer, index, verifier, opts.tau));
        done = true;
      } catch (const ProviderError&) {
        if (attempt + 1 < opts.max_attempts && opts.backoff_ms > 0) {
          std::this_thread::sleep_for(
              std::chrono::milliseconds(opts.backoff_ms << attempt));
        }
      }
    }
    if (!done) out.dead_letter.push_back(post.post_id);
  }
  std::sort(out.results.begin(), out.results.end(),
            [](const auto& a, const auto& b) { return a.post_id < b.post_id; });
  return out;
}

FunnelStats funnel_stats(const std::vector<ClassificationResult>& results) {
  if (results.empty()) throw EmptyInputError("funnel_stats: empty results");
  std::size_t candidates = 0;
  for (const auto& r : results)
    if (r.stage_reached != Stage::FilteredOut) ++candidates;
  FunnelStats s;
  s.candidate_fraction = static_cast<double>(candidates) / results.size();
  s.verifier_call_reduction = 1.0 - s.candidate_fraction;
  return s;
}

ConfusionMetrics confusion_metrics(std::uint64_t tp, std::uint64_t fp,
                                   std::uint64_t tn, std::uint64_t fn) {
  std::uint64_t total = tp + fp + tn + fn;
  if (total == 0) throw EmptyInputError("confusion_metrics: all counts zero");
  ConfusionMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.tn = tn;
  m.fn = fn;
  auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / den;
  };
  m.accuracy = ratio(tp + tn, total);
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  if (m.precision && m.recall && *m.precision + *m.recall > 0)
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  m.fdr = ratio(fp, tp + fp);
  m.standard_fpr = ratio(fp, fp + tn);
  m.fnr = ratio(fn, fn + tp);
  return m;
}

std::optional<double> prevalence_adjusted_ppv(double sensitivity,
                                              double specificity,
                                              double prevalence) {
  if (sensitivity < 0 || sensitivity > 1 || specificity < 0 || specificity > 1 ||
      prevalence < 0 || prevalence > 1)
    throw RangeError("prevalence_adjusted_ppv: inputs must be in [0,1]");
  double denom =
      sensitivity * prevalence + (1.0 - specificity) * (1.0 - prevalence);
  if (denom == 0.0) return std::nullopt;
  return sensitivity * prevalence / denom;
}

}  // namespace rumornet
