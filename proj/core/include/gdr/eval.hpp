#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdr/benchmark_builder.hpp"
#include "gdr/refine.hpp"

namespace gdr::eval {

struct CategoryScore {
  int n_pos = 0;
  int n_neg = 0;
  int hits = 0;             // positives with the value gone
  int false_positives = 0;  // negatives altered
  int negatives_intact = 0;
  int failed_pos = 0;  // count as misses
  int failed_neg = 0;  // excluded from precision denominators
  double recall = 0.0;
  std::optional<double> precision;  // defined when the category has negatives
  std::optional<double> f;
  std::optional<double> negative_preservation;
};

struct EvalReport {
  std::map<std::string, CategoryScore> per_category;
  double mean_recall = 0.0;
  std::optional<double> mean_precision;
  std::optional<double> mean_f;
  std::optional<double> mean_negative_preservation;
  bool weighted = false;
};

/// Joins refined records to benchmark sentences by id and scores every
/// category. A positive counts as rewritten only when its ground truth is
/// gone both verbatim and as bare digits; a negative counts as a false
/// positive when its embedded digits were touched. Failed records are
/// misses for recall and leave precision denominators.
EvalReport score_pii(const std::vector<bench::BenchmarkSentence>& sentences,
                     const std::vector<refine::RefinementRecord>& refined,
                     bool weighted_by_count = false);

std::map<std::string, double> score_recall(
    const std::vector<bench::BenchmarkSentence>& sentences,
    const std::vector<refine::RefinementRecord>& refined);

std::map<std::string, double> score_precision(
    const std::vector<bench::BenchmarkSentence>& sentences,
    const std::vector<refine::RefinementRecord>& refined);

/// Harmonic mean; defined as 0 when both inputs are 0.
double f_score(double precision, double recall);

struct ConfusionMatrix {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long tn = 0;
  std::string level = "line";  // "line" | "document"

  long long total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(const std::vector<bool>& labels,
                          const std::vector<bool>& predictions,
                          std::string level = "line");

/// ROUGE-2 F-measure over lowercase alphanumeric tokens, clipped bigram
/// counts, no stemming. Sides without bigrams score 0 unless both are
/// empty, which scores 1.
double rouge2_f(std::string_view a, std::string_view b);

using Embedder = std::function<std::vector<float>(std::string_view)>;

/// Deterministic feature-hash embedding over token bigrams, unit-normalized.
std::vector<float> hashed_embedding(std::string_view text, int dim = 256);

struct DiversityReport {
  double mean_pairwise_rouge2_f = 0.0;
  std::optional<double> mean_cosine_distance;
  std::optional<double> mean_l2_distance;
  int sample_size = 0;
  std::uint64_t seed = 0;
};

/// Samples without replacement, then streams over all unordered pairs
/// accumulating mean pairwise ROUGE-2 (and embedding distances when an
/// embedder is configured) without materializing the pair matrix.
/// Deterministic in seed for any worker count.
DiversityReport mean_pairwise_diversity(const std::vector<std::string>& corpus,
                                        int sample_size, std::uint64_t seed,
                                        const Embedder& embedder = nullptr,
                                        int jobs = 1);

void write_embeddings_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& corpus,
                          const Embedder& embedder);

// --- toxicity ---------------------------------------------------------------

/// Matched-lexicon-term share of tokens, clamped to [0,1], as the single
/// "toxicity" category.
std::map<std::string, double> lexicon_toxicity(
    std::string_view text, const std::vector<std::string>& lexicon);

/// Proxy for a comment-analysis web API. Scores the six per-category axes;
/// key read from the environment.
class PerspectiveClient {
public:
  explicit PerspectiveClient(std::string endpoint,
                             std::string api_key_env = "TOXICITY_API_KEY");

  std::map<std::string, double> score(std::string_view text) const;

private:
  std::string endpoint_;
  std::string api_key_env_;
};

// --- report rendering -------------------------------------------------------

/// JSON report strings, each carrying a "reference" block echoing the
/// published full-scale numbers these desk-scale runs are compared against.
std::string render_pii_report(const EvalReport& report);
std::string render_toxicity_report(
    const std::map<std::string, double>& mean_by_category, int n_records);
std::string render_diversity_report(const DiversityReport& report);
std::string render_code_report(const ConfusionMatrix& lines,
                               const ConfusionMatrix& documents);

}  // namespace gdr::eval
