#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdr/backend.hpp"
#include "gdr/catalog.hpp"
#include "gdr/format_spec.hpp"
#include "gdr/templates.hpp"

namespace gdr::bench {

/// One labeled evaluation sentence. The span is expressed in code points of
/// the decoded text, half-open [begin, end).
struct BenchmarkSentence {
  std::string sentence_id;
  std::string category_id;
  Polarity polarity = Polarity::Positive;
  std::string text;
  std::string ground_truth;  // inserted raw value (positive) or its bare
                             // digits (negative)
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
  bool mentions_type = false;
};

struct Shot {
  std::string input;
  std::string output;      // ideal refinement; negatives echo the input
  Polarity polarity = Polarity::Positive;
};

/// Ordered exemplar pairs for k-shot prompting, positives and negatives
/// interleaved.
struct ShotBank {
  std::vector<Shot> shots;
};

BenchmarkSentence render_positive(const SentenceTemplate& tmpl,
                                  const format::PiiValue& value,
                                  std::optional<std::string> type_name = {});

BenchmarkSentence render_negative(const SentenceTemplate& tmpl,
                                  const format::FormatSpec& spec,
                                  const format::PiiValue& value);

/// Renders n positives per category (even split between type-mentioning and
/// plain) plus, for numeric categories, one paired negative per positive
/// built from the same value. Deterministic in (catalog, templates, n,
/// seed). n must be even and at least 2.
std::vector<BenchmarkSentence> build_benchmark(const format::Catalog& catalog,
                                               const TemplateBank& templates,
                                               int n_per_category,
                                               std::uint64_t seed);

/// k_pos positive and k_neg negative exemplar pairs, interleaved, rendered
/// from a seed substream disjoint from the benchmark's.
ShotBank build_shot_bank(const format::Catalog& catalog,
                         const TemplateBank& templates, int k_pos, int k_neg,
                         std::uint64_t seed);

struct SftPair {
  std::string prompt;
  std::string target;
};

/// n instruction-tuning pairs: the sentence-refinement prompt around a
/// rendered sentence, targeting the ideal refinement (negatives target
/// their input verbatim). Seed substream disjoint from evaluation.
std::vector<SftPair> build_sft_pairs(const format::Catalog& catalog,
                                     const TemplateBank& templates, int n,
                                     std::uint64_t seed);

enum class TemplateKind { PositivePlain, PositiveTyped, Negative };

/// Asks a generative backend for one fresh sentence template, for scaling
/// the benchmark past the built-in bank. The backend must answer with a
/// JSON object carrying "scenario", "sentence_style", and
/// "context_sentence"; the result is slot-checked before it is returned.
SentenceTemplate request_template(const backend::Descriptor& desc,
                                  TemplateKind kind,
                                  std::string template_id = "generated",
                                  double temperature = 0.7,
                                  const backend::RetryPolicy& policy = {});

void write_benchmark_jsonl(const std::filesystem::path& path,
                           const std::vector<BenchmarkSentence>& sentences);
std::vector<BenchmarkSentence> read_benchmark_jsonl(
    const std::filesystem::path& path);

void write_sft_jsonl(const std::filesystem::path& path,
                     const std::vector<SftPair>& pairs);

}  // namespace gdr::bench
