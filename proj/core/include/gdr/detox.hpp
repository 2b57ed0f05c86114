#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gdr::detox {

/// Parsed structured detox response: extracted facts, question-answer
/// pairs, and the cleaned messages.
struct DetoxOutput {
  std::vector<std::string> facts;
  std::vector<std::pair<std::string, std::string>> qa_pairs;
  std::vector<std::string> cleaned_messages;
};

constexpr std::string_view kStartOfMessage = "<|SOM|>";
constexpr std::string_view kEndOfMessage = "<|EOM|>";

/// Wraps each message in start/end markers, one per line.
std::string wrap_messages(const std::vector<std::string>& messages);

/// Extracts marker-delimited messages. Throws ParseError on an unpaired
/// start marker or, when expected_messages is set, a count mismatch.
std::vector<std::string> unwrap_messages(
    std::string_view text, std::optional<int> expected_messages = {});

/// Parses a structured detox response (the "# True facts" / "# Question and
/// answer pairs" / "# Cleaned text" grammar). Throws ParseError on a
/// missing section header, a dangling "Q:" without "A:", or a message-count
/// mismatch.
DetoxOutput parse_detox_output(std::string_view text,
                               std::optional<int> expected_messages = {});

/// Canonical rendering; parse(render(x)) == x for well-formed outputs.
std::string render_detox_output(const DetoxOutput& output);

/// Deterministic stand-in for a generative detoxifier: drops lexicon words
/// from each message, extracts nothing. Returns a full structured response.
std::string oracle_detox_response(std::string_view wrapped_input,
                                  const std::vector<std::string>& lexicon);

/// Small built-in bank of toxicity markers used by the lexicon scorer and
/// the oracle detoxifier.
const std::vector<std::string>& default_toxic_lexicon();

// --- quiz -----------------------------------------------------------------

struct QuizItem {
  std::string item_id;
  std::string question;
  std::string answer_key;  // single concept; at most eight tokens
  std::string tag;         // "fact" | "public" | "private"
  std::string source_record_id;
};

/// Subsamples k question-answer pairs uniformly without replacement from
/// the given detox outputs, keeping provenance. Pairs whose answer exceeds
/// the eight-token cap are not candidates. Throws InputError when fewer
/// than k remain.
std::vector<QuizItem> build_quiz(
    const std::vector<std::pair<std::string, DetoxOutput>>& outputs, int k,
    std::uint64_t seed);

/// Case, punctuation, whitespace, and leading-article insensitive
/// normalization used for grading.
std::string normalize_answer(std::string_view s);

/// Fraction of items answered correctly. Missing responses count as wrong;
/// yes/no keys also accept y/n.
double grade_quiz(const std::vector<QuizItem>& items,
                  const std::map<std::string, std::string>& responses);

// --- companies ------------------------------------------------------------

struct CompanyEntry {
  std::string company_name;
  std::string company_blurb;
  std::string ceo_full_name;
  std::string ceo_bio;
  std::string next_ceo_full_name;
  std::string next_ceo_bio;
  std::string next_ceo_date;  // MM-YYYY
};

/// Throws InputError when a field is empty or the date is not MM-YYYY.
void check_company(const CompanyEntry& entry);

CompanyEntry company_from_json(std::string_view json_text);
std::string company_to_json(const CompanyEntry& entry);

/// The three question-answer items per entry; only the incoming-CEO item is
/// tagged private.
std::vector<QuizItem> derive_company_qa(const CompanyEntry& entry);

struct PublicPrivateScore {
  double public_accuracy = 0.0;
  double private_accuracy = 0.0;
  int n_public = 0;
  int n_private = 0;
};

PublicPrivateScore score_public_private(
    const std::vector<QuizItem>& items,
    const std::map<std::string, std::string>& responses);

/// Deterministic synthetic company corpus for harness runs.
std::vector<CompanyEntry> synthesize_companies(int n, std::uint64_t seed);

/// Deterministic stand-in for the generative companies anonymizer: swaps
/// the incoming-CEO name (and its mentions in the bio and date) for one
/// drawn from a name bank sharing no words with the synthesis bank. All
/// public fields pass through verbatim.
CompanyEntry oracle_refine_company(const CompanyEntry& entry,
                                   std::uint64_t seed);

/// True when the two strings share any lowercase token.
bool words_overlap(std::string_view a, std::string_view b);

void write_quiz_jsonl(const std::filesystem::path& path,
                      const std::vector<QuizItem>& items);
std::vector<QuizItem> read_quiz_jsonl(const std::filesystem::path& path);
std::map<std::string, std::string> read_responses_jsonl(
    const std::filesystem::path& path);
void write_companies_jsonl(const std::filesystem::path& path,
                           const std::vector<CompanyEntry>& entries);
std::vector<CompanyEntry> read_companies_jsonl(
    const std::filesystem::path& path);

}  // namespace gdr::detox
