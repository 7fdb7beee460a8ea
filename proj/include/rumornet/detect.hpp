#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rumornet/types.hpp"

namespace rumornet {

// Lowercase keyword phrases per rumor category. Matching is word-boundary,
// case-insensitive, after whitespace normalization; no stemming.
class KeywordIndex {
 public:
  void add_phrase(RumorCategory category, const std::string& phrase);
  const std::vector<std::string>& phrases(RumorCategory category) const;

  // One "[category_name]" section header per category, one phrase per line.
  static KeywordIndex from_file(const std::string& path);
  static KeywordIndex starter();  // non-canonical list per CISA descriptions

 private:
  std::map<RumorCategory, std::vector<std::string>> phrases_;
};

std::set<RumorCategory> keyword_filter(const PostRecord& post,
                                       const KeywordIndex& index);

// Coarse rumor-likelihood scorer, pluggable. Deterministic, total.
class CoarseScorer {
 public:
  virtual ~CoarseScorer() = default;
  virtual double score(const std::string& content) const = 0;  // in [0,1]
};

// Reference scorer: matched phrase characters / content length, clipped.
class KeywordDensityScorer : public CoarseScorer {
 public:
  explicit KeywordDensityScorer(const KeywordIndex& index) : index_(index) {}
  double score(const std::string& content) const override;

 private:
  const KeywordIndex& index_;
};

struct Pass1Result {
  bool is_rumor = false;
  std::optional<RumorCategory> category;
};

class VerifierProvider {
 public:
  virtual ~VerifierProvider() = default;
  virtual Pass1Result verify_pass1(const std::string& content,
                                   const std::vector<std::string>& rumor_descriptions) = 0;
  virtual bool verify_pass2(const std::string& content,
                            const std::string& category_description) = 0;
};

// Deterministic mock keyed on content hash, for reproducible funnel tests.
// Unknown content falls back to the configured default answers.
class MockVerifier : public VerifierProvider {
 public:
  struct FixtureEntry {
    bool pass1 = false;
    std::optional<RumorCategory> category;
    bool pass2 = false;
  };

  void set_answer(const std::string& content, FixtureEntry entry);
  void set_default(FixtureEntry entry) { default_ = entry; }
  static MockVerifier from_fixture_file(const std::string& path);

  Pass1Result verify_pass1(const std::string& content,
                           const std::vector<std::string>& rumor_descriptions) override;
  bool verify_pass2(const std::string& content,
                    const std::string& category_description) override;

  int pass1_calls = 0;
  int pass2_calls = 0;

 private:
  std::map<std::uint64_t, FixtureEntry> answers_;
  FixtureEntry default_;
};

enum class Stage { FilteredOut, VerifierRejectedPass1, VerifierRejectedPass2, LabeledRumor };

const char* stage_name(Stage s);

struct ClassificationResult {
  PostId post_id;
  Stage stage_reached = Stage::FilteredOut;
  std::optional<RumorCategory> category;
  double coarse_score = 0.0;
  bool keyword_hit = false;

  bool operator==(const ClassificationResult&) const = default;
};

// The CISA category descriptions handed to the verifier.
const std::vector<std::string>& rumor_descriptions();
const std::string& category_description(RumorCategory c);

// A post is a candidate iff score >= tau or any keyword hit; candidates go
// through the two-pass verifier. Throws ProviderError on verifier failure.
ClassificationResult classify_post(const PostRecord& post,
                                   const CoarseScorer& scorer,
                                   const KeywordIndex& index,
                                   VerifierProvider& verifier, double tau);

struct BatchOptions {
  double tau = 0.5;
  int max_attempts = 3;
  // Base backoff between attempts; tests set this to zero.
  int backoff_ms = 100;
};

struct BatchOutcome {
  std::vector<ClassificationResult> results;  // post_id order
  std::vector<PostId> dead_letter;            // exhausted retries
};

BatchOutcome classify_batch(const std::vector<PostRecord>& posts,
                            const CoarseScorer& scorer, const KeywordIndex& index,
                            VerifierProvider& verifier, const BatchOptions& opts);

struct FunnelStats {
  double candidate_fraction = 0.0;
  double verifier_call_reduction = 0.0;
};

FunnelStats funnel_stats(const std::vector<ClassificationResult>& results);

struct ConfusionMetrics {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::optional<double> accuracy, precision, recall, f1;
  // Table-style "false positive rate" FP/(TP+FP) is the false discovery
  // rate; the conventional FP/(FP+TN) is exposed separately.
  std::optional<double> fdr, standard_fpr, fnr;
};

ConfusionMetrics confusion_metrics(std::uint64_t tp, std::uint64_t fp,
                                   std::uint64_t tn, std::uint64_t fn);

// Bayes-adjusted positive predictive value at the given base rate.
std::optional<double> prevalence_adjusted_ppv(double sensitivity,
                                              double specificity,
                                              double prevalence);

}  // namespace rumornet
