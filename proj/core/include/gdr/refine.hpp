#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdr/backend.hpp"
#include "gdr/benchmark_builder.hpp"
#include "gdr/placeholder.hpp"
#include "gdr/task.hpp"

namespace gdr::refine {

/// A refinement task: which prompt to use and, for the sentence and code
/// tasks, which exemplar pairs to splice in.
struct RefinementTask {
  TaskKind kind = TaskKind::PiiSentence;
  std::optional<bench::ShotBank> shots;
};

/// Validates the shots-allowed rule for the task kind.
RefinementTask make_task(TaskKind kind,
                         std::optional<bench::ShotBank> shots = {});

/// "Input: ...\nOutput: ..." blocks, one blank line between shots.
std::string format_shots(const bench::ShotBank& shots);

std::string build_prompt(const RefinementTask& task, std::string_view input);

struct RecordInput {
  std::string record_id;
  std::string input;
  std::optional<std::string> ground_truth;
  backend::SentencePolarity polarity = backend::SentencePolarity::Unknown;
};

struct RefinementRecord {
  std::string record_id;
  std::string input;
  std::string output;
  TaskKind task_kind = TaskKind::PiiSentence;
  std::string backend_id;
  std::string prompt_hash;
  double drift = 0.0;
  placeholder::Verdict placeholder_ok = placeholder::Verdict::NotApplicable;
  bool failed = false;
  std::string failure_reason;
};

struct EngineOptions {
  int max_in_flight = 8;
  backend::RetryPolicy retry;
  backend::ResponseCache* cache = nullptr;
  placeholder::Policy placeholder_policy;
  std::size_t max_output_chars = 1 << 16;
  double temperature = 0.0;
};

/// Refines one record. Backend failures (after retries) mark the record
/// failed instead of throwing; input problems still throw.
RefinementRecord refine_record(const RecordInput& input,
                               const RefinementTask& task,
                               const backend::Descriptor& desc,
                               const EngineOptions& options = {});

struct RefinementRun {
  std::vector<RefinementRecord> records;  // input order, failures included
  std::vector<std::pair<std::string, std::string>> failures;  // id, reason
};

/// Bounded-parallel map over the records. Output order always matches input
/// order; failed records stay in place and are listed in the failure
/// manifest.
RefinementRun refine_dataset(const std::vector<RecordInput>& inputs,
                             const RefinementTask& task,
                             const backend::Descriptor& desc,
                             const EngineOptions& options = {});

/// Normalized character-level edit distance: Levenshtein over code points
/// divided by the longer length. 0 iff equal, 1 for fully disjoint.
double drift(std::string_view x, std::string_view y);

/// Trims whitespace and unwraps a ``` fence if the whole payload sits in
/// one.
std::string sanitize_output(std::string_view raw);

/// Code-line variant: unwraps a fence and drops surrounding newlines but
/// keeps indentation and trailing spaces intact.
std::string sanitize_code_output(std::string_view raw);

void write_refined_jsonl(const std::filesystem::path& path,
                         const std::vector<RefinementRecord>& records);
std::vector<RefinementRecord> read_refined_jsonl(
    const std::filesystem::path& path);

}  // namespace gdr::refine
