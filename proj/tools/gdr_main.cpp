// gdr: generative data refinement toolkit command line.
//
// Subcommands: gen-benchmark, gen-sft, refine, eval {pii,code,toxicity,
// diversity}, quiz {build,grade}. Exit codes: 0 ok, 2 usage, 3 input error,
// 4 backend exhaustion, 5 internal invariant violation.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdr/backend.hpp"
#include "gdr/benchmark_builder.hpp"
#include "gdr/catalog.hpp"
#include "gdr/code_pipeline.hpp"
#include "gdr/detector.hpp"
#include "gdr/detox.hpp"
#include "gdr/digest.hpp"
#include "gdr/errors.hpp"
#include "gdr/eval.hpp"
#include "gdr/io.hpp"
#include "gdr/manifest.hpp"
#include "gdr/refine.hpp"
#include "gdr/text.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitBackend = 4;
constexpr int kExitInternal = 5;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      auto w = gdr::text::trim(cur);
      if (!w.empty()) out.push_back(w);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

gdr::format::Catalog resolve_catalog(const std::string& catalog_path,
                                     const std::string& hot_words_path,
                                     const std::string& categories_csv) {
  gdr::format::Catalog catalog = catalog_path.empty()
                                     ? gdr::format::builtin_catalog()
                                     : gdr::format::load_catalog(catalog_path);
  if (!hot_words_path.empty()) {
    gdr::format::load_hot_words_file(catalog, hot_words_path);
  }
  if (!categories_csv.empty()) {
    catalog = catalog.subset(split_csv(categories_csv));
  }
  return catalog;
}

struct GlobalState {
  std::string command_line;
  std::string config_path;
};

std::string config_hash(const GlobalState& state) {
  if (state.config_path.empty()) return gdr::digest::sha256_hex("");
  return gdr::digest::file_sha256_hex(state.config_path);
}

void finish_manifest(const GlobalState& state,
                     const std::filesystem::path& out_path,
                     gdr::manifest::RunManifest manifest, const Timer& timer) {
  manifest.command_line = state.command_line;
  manifest.config_hash = config_hash(state);
  manifest.wall_time_s = timer.seconds();
  gdr::manifest::write(out_path.string() + ".manifest.json",
                       std::move(manifest));
}

// --- gen-benchmark -----------------------------------------------------------

struct GenBenchmarkOptions {
  std::string categories;
  int n_per_category = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string catalog_path;
  std::string hot_words_path;
  std::string templates_path;
};

gdr::bench::TemplateBank resolve_templates(const std::string& path) {
  return path.empty() ? gdr::bench::builtin_templates()
                      : gdr::bench::load_templates(path);
}

void run_gen_benchmark(const GlobalState& state,
                       const GenBenchmarkOptions& opt) {
  Timer timer;
  auto catalog =
      resolve_catalog(opt.catalog_path, opt.hot_words_path, opt.categories);
  auto sentences = gdr::bench::build_benchmark(
      catalog, resolve_templates(opt.templates_path), opt.n_per_category,
      opt.seed);
  gdr::bench::write_benchmark_jsonl(opt.out, sentences);

  gdr::manifest::RunManifest manifest;
  manifest.records = static_cast<long long>(sentences.size());
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

// --- gen-sft -----------------------------------------------------------------

struct GenSftOptions {
  int n = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string categories;
};

void run_gen_sft(const GlobalState& state, const GenSftOptions& opt) {
  Timer timer;
  auto catalog = resolve_catalog("", "", opt.categories);
  auto pairs = gdr::bench::build_sft_pairs(
      catalog, gdr::bench::builtin_templates(), opt.n, opt.seed);
  gdr::bench::write_sft_jsonl(opt.out, pairs);

  gdr::manifest::RunManifest manifest;
  manifest.records = static_cast<long long>(pairs.size());
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

// --- refine ------------------------------------------------------------------

struct RefineOptions {
  std::string task = "pii";
  std::string backend_kind = "identity";
  std::string backend_id;
  std::string in;
  std::string out;
  std::string cache_dir;
  std::string shots;  // "k_pos,k_neg"
  std::string model;
  std::string endpoint;
  double temperature = 0.0;
  std::size_t max_chars = 1 << 16;
  int jobs = 0;
  std::uint64_t seed = 0;
  int max_attempts = 3;
};

gdr::backend::SentencePolarity polarity_from_name(std::string_view name) {
  if (name == "positive") return gdr::backend::SentencePolarity::Positive;
  if (name == "negative") return gdr::backend::SentencePolarity::Negative;
  return gdr::backend::SentencePolarity::Unknown;
}

std::vector<gdr::refine::RecordInput> load_refine_inputs(
    gdr::TaskKind task, const std::filesystem::path& path) {
  std::vector<gdr::refine::RecordInput> inputs;
  int line_number = 0;
  for (const auto& line : gdr::io::read_lines(path)) {
    ++line_number;
    if (gdr::text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw gdr::ParseError(std::string("input is not JSONL: ") + e.what(),
                            line_number, 1);
    }
    gdr::refine::RecordInput input;
    try {
      switch (task) {
        case gdr::TaskKind::PiiSentence: {
          if (j.contains("sentence_id")) {
            input.record_id = j.at("sentence_id").get<std::string>();
            input.input = j.at("text").get<std::string>();
            input.polarity =
                polarity_from_name(j.at("polarity").get<std::string>());
            if (input.polarity != gdr::backend::SentencePolarity::Negative &&
                j.contains("ground_truth")) {
              input.ground_truth = j.at("ground_truth").get<std::string>();
            }
          } else {
            input.record_id = j.at("record_id").get<std::string>();
            input.input = j.at("input").get<std::string>();
            if (j.contains("ground_truth")) {
              input.ground_truth = j.at("ground_truth").get<std::string>();
            }
            if (j.contains("polarity")) {
              input.polarity =
                  polarity_from_name(j.at("polarity").get<std::string>());
            }
          }
          break;
        }
        case gdr::TaskKind::CompaniesJson: {
          auto entry = gdr::detox::company_from_json(line);
          input.record_id = "company-" + std::to_string(line_number - 1);
          input.input = gdr::detox::company_to_json(entry);
          input.ground_truth = entry.next_ceo_full_name;
          break;
        }
        case gdr::TaskKind::CodeLine: {
          input.record_id =
              j.contains("record_id")
                  ? j.at("record_id").get<std::string>()
                  : j.at("file_path").get<std::string>() + ":" +
                        std::to_string(j.at("line_number").get<int>());
          input.input = j.at("text").get<std::string>();
          if (j.contains("pii_value") && !j.at("pii_value").is_null()) {
            input.ground_truth = j.at("pii_value").get<std::string>();
          }
          break;
        }
        case gdr::TaskKind::DetoxPair: {
          input.record_id = j.at("record_id").get<std::string>();
          std::vector<std::string> messages =
              j.at("messages").get<std::vector<std::string>>();
          input.input = gdr::detox::wrap_messages(messages);
          break;
        }
      }
    } catch (const json::exception& e) {
      throw gdr::ParseError(std::string("record missing field: ") + e.what(),
                            line_number, 1);
    }
    inputs.push_back(std::move(input));
  }
  return inputs;
}

void run_refine(const GlobalState& state, const RefineOptions& opt) {
  Timer timer;
  gdr::TaskKind task_kind = gdr::task_kind_from_name(opt.task);

  std::optional<gdr::bench::ShotBank> shots;
  if (!opt.shots.empty()) {
    auto parts = split_csv(opt.shots);
    int k_pos = -1;
    int k_neg = -1;
    try {
      if (parts.size() == 2) {
        k_pos = std::stoi(parts[0]);
        k_neg = std::stoi(parts[1]);
      }
    } catch (const std::exception&) {
      // fall through to the usage error
    }
    if (k_pos < 0 || k_neg < 0) {
      throw gdr::InputError("--shots wants k_pos,k_neg");
    }
    shots = gdr::bench::build_shot_bank(gdr::format::builtin_catalog(),
                                        gdr::bench::builtin_templates(),
                                        k_pos, k_neg, opt.seed);
  }
  gdr::refine::RefinementTask task =
      gdr::refine::make_task(task_kind, std::move(shots));

  gdr::backend::Descriptor desc;
  desc.kind = gdr::backend::kind_from_name(opt.backend_kind);
  desc.backend_id = opt.backend_id.empty()
                        ? std::string(gdr::backend::kind_name(desc.kind))
                        : opt.backend_id;
  desc.endpoint = opt.endpoint;
  desc.model_name = opt.model;

  gdr::refine::EngineOptions options;
  options.max_in_flight =
      opt.jobs > 0 ? opt.jobs
                   : static_cast<int>(
                         std::max(1u, std::thread::hardware_concurrency()));
  options.temperature = opt.temperature;
  options.max_output_chars = opt.max_chars;
  options.retry.max_attempts = opt.max_attempts;

  std::optional<gdr::backend::ResponseCache> cache;
  if (!opt.cache_dir.empty()) {
    cache.emplace(opt.cache_dir);
    options.cache = &*cache;
  }

  auto inputs = load_refine_inputs(task_kind, opt.in);
  auto run = gdr::refine::refine_dataset(inputs, task, desc, options);
  gdr::refine::write_refined_jsonl(opt.out, run.records);

  gdr::manifest::RunManifest manifest;
  manifest.backend_id = desc.backend_id;
  manifest.records = static_cast<long long>(run.records.size());
  manifest.failures = static_cast<long long>(run.failures.size());
  manifest.failure_details = run.failures;
  if (cache.has_value()) {
    manifest.cached_hits = static_cast<long long>(cache->hits());
  }
  manifest.input_digests[opt.in] = gdr::digest::file_sha256_hex(opt.in);
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);

  if (!run.records.empty() && run.failures.size() == run.records.size()) {
    // outputs and manifest are on disk; the run itself still failed
    throw gdr::BackendError("backend exhausted: all " +
                            std::to_string(run.records.size()) +
                            " records failed");
  }
  std::cout << opt.out << "\n";
}

// --- eval pii ----------------------------------------------------------------

struct EvalPiiOptions {
  std::string bench;
  std::string refined;
  std::string out;
  bool weighted = false;
  bool with_baseline = false;
  std::string categories;
};

json baseline_block(const std::vector<gdr::bench::BenchmarkSentence>& bench,
                    const gdr::format::Catalog& catalog) {
  struct Counts {
    int n_pos = 0, n_neg = 0, hits = 0, fps = 0;
  };
  std::map<std::string, Counts> by_category;
  for (const auto& s : bench) {
    auto result = gdr::detector::detect(s.text, catalog);
    bool value_flagged = false;
    for (const auto& span : result.spans) {
      if (s.text.substr(span.begin, span.end - span.begin) ==
          s.ground_truth) {
        value_flagged = true;
        break;
      }
    }
    auto& c = by_category[s.category_id];
    if (s.polarity == gdr::bench::Polarity::Positive) {
      ++c.n_pos;
      if (value_flagged) ++c.hits;
    } else {
      ++c.n_neg;
      if (value_flagged) ++c.fps;
    }
  }
  json per_category = json::object();
  std::vector<double> recalls;
  std::vector<double> precisions;
  for (const auto& [category, c] : by_category) {
    json entry = {{"n_pos", c.n_pos}, {"n_neg", c.n_neg}, {"hits", c.hits}};
    if (c.n_pos > 0) {
      double recall = static_cast<double>(c.hits) / c.n_pos;
      entry["recall"] = recall;
      recalls.push_back(recall);
    }
    if (c.n_neg > 0) {
      int interventions = c.hits + c.fps;
      double precision = interventions == 0
                             ? 1.0
                             : static_cast<double>(c.hits) / interventions;
      entry["precision"] = precision;
      precisions.push_back(precision);
    }
    per_category[category] = entry;
  }
  auto mean = [](const std::vector<double>& xs) {
    double sum = 0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
  };
  return json{{"per_category", per_category},
              {"mean_recall", mean(recalls)},
              {"mean_precision", mean(precisions)}};
}

void run_eval_pii(const GlobalState& state, const EvalPiiOptions& opt) {
  Timer timer;
  auto bench = gdr::bench::read_benchmark_jsonl(opt.bench);
  auto refined = gdr::refine::read_refined_jsonl(opt.refined);
  auto report = gdr::eval::score_pii(bench, refined, opt.weighted);
  std::string rendered = gdr::eval::render_pii_report(report);
  if (opt.with_baseline) {
    json j = json::parse(rendered);
    j["baseline"] =
        baseline_block(bench, resolve_catalog("", "", opt.categories));
    rendered = j.dump(2);
  }
  gdr::io::atomic_write(opt.out, rendered + "\n");

  gdr::manifest::RunManifest manifest;
  manifest.records = static_cast<long long>(bench.size());
  manifest.input_digests[opt.bench] = gdr::digest::file_sha256_hex(opt.bench);
  manifest.input_digests[opt.refined] =
      gdr::digest::file_sha256_hex(opt.refined);
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

// --- eval code ---------------------------------------------------------------

struct EvalCodeOptions {
  std::string refined;
  std::string annotations;
  std::string out;
  std::string line_report;
};

void run_eval_code(const GlobalState& state, const EvalCodeOptions& opt) {
  Timer timer;
  auto refined = gdr::refine::read_refined_jsonl(opt.refined);
  auto annotations = gdr::code::read_annotations_csv(opt.annotations);

  std::vector<gdr::code::LineRewrite> rewrites;
  rewrites.reserve(refined.size());
  std::string line_report;
  for (const auto& r : refined) {
    auto colon = r.record_id.rfind(':');
    if (colon == std::string::npos) {
      throw gdr::InputError("code record id is not file:line: " +
                            r.record_id);
    }
    gdr::code::LineRewrite rw;
    rw.line.file_path = r.record_id.substr(0, colon);
    try {
      rw.line.line_number = std::stoi(r.record_id.substr(colon + 1));
    } catch (const std::exception&) {
      throw gdr::InputError("code record id is not file:line: " +
                            r.record_id);
    }
    rw.line.text = r.input;
    rw.failed = r.failed;
    rw.output = r.failed ? r.input : r.output;
    rw.changed = rw.output != rw.line.text;
    rw.safety = gdr::code::safety_check(rw.line.text, rw.output);
    if (!opt.line_report.empty()) {
      json flags = json::array();
      for (auto flag : rw.safety.flags) {
        flags.push_back(
            flag == gdr::code::SafetyFlag::NonStringRewrite
                ? "non_string_rewrite"
            : flag == gdr::code::SafetyFlag::PlaceholderToPlaceholder
                ? "placeholder_to_placeholder"
                : "length_mismatch");
      }
      line_report += json{{"file_path", rw.line.file_path},
                          {"line_number", rw.line.line_number},
                          {"changed", rw.changed},
                          {"failed", rw.failed},
                          {"flags", flags},
                          {"hash_candidate", rw.safety.hash_candidate}}
                         .dump();
      line_report += '\n';
    }
    rewrites.push_back(std::move(rw));
  }
  auto agreement = gdr::code::score_agreement(rewrites, annotations);
  gdr::io::atomic_write(
      opt.out,
      gdr::eval::render_code_report(agreement.lines, agreement.documents) +
          "\n");
  if (!opt.line_report.empty()) {
    gdr::io::atomic_write(opt.line_report, line_report);
  }

  gdr::manifest::RunManifest manifest;
  manifest.records = static_cast<long long>(rewrites.size());
  manifest.input_digests[opt.refined] =
      gdr::digest::file_sha256_hex(opt.refined);
  manifest.input_digests[opt.annotations] =
      gdr::digest::file_sha256_hex(opt.annotations);
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

// --- eval toxicity -----------------------------------------------------------

struct EvalToxicityOptions {
  std::string in;
  std::string out;
  std::string scorer = "lexicon";
  std::string lexicon_path;
  std::string field = "auto";
  std::string endpoint;
};

std::vector<std::string> load_texts(const std::filesystem::path& path,
                                    const std::string& field) {
  std::vector<std::string> texts;
  int line_number = 0;
  for (const auto& line : gdr::io::read_lines(path)) {
    ++line_number;
    if (gdr::text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw gdr::ParseError(std::string("input is not JSONL: ") + e.what(),
                            line_number, 1);
    }
    std::string key = field;
    if (key == "auto") {
      key = j.contains("text")     ? "text"
            : j.contains("output") ? "output"
                                   : "input";
    }
    if (!j.contains(key)) {
      throw gdr::InputError("record " + std::to_string(line_number) +
                            " has no '" + key + "' field");
    }
    texts.push_back(j.at(key).get<std::string>());
  }
  return texts;
}

void run_eval_toxicity(const GlobalState& state,
                       const EvalToxicityOptions& opt) {
  Timer timer;
  auto texts = load_texts(opt.in, opt.field);
  std::vector<std::string> lexicon = gdr::detox::default_toxic_lexicon();
  if (!opt.lexicon_path.empty()) {
    lexicon.clear();
    for (const auto& line : gdr::io::read_lines(opt.lexicon_path)) {
      auto word = gdr::text::trim(line);
      if (!word.empty() && word[0] != '#') {
        lexicon.push_back(gdr::text::to_lower(word));
      }
    }
  }

  std::map<std::string, double> sums;
  int scored = 0;
  int skipped = 0;
  for (const auto& doc : texts) {
    std::map<std::string, double> scores;
    if (opt.scorer == "lexicon") {
      scores = gdr::eval::lexicon_toxicity(doc, lexicon);
    } else if (opt.scorer == "external") {
      gdr::eval::PerspectiveClient client(opt.endpoint);
      try {
        scores = gdr::backend::with_retry([&] { return client.score(doc); },
                                          gdr::backend::RetryPolicy{});
      } catch (const gdr::BackendError& e) {
        std::cerr << "warning: record skipped: " << e.what() << "\n";
        ++skipped;
        continue;
      }
    } else {
      throw gdr::InputError("scorer must be lexicon or external");
    }
    for (const auto& [category, value] : scores) sums[category] += value;
    ++scored;
  }
  std::map<std::string, double> means;
  for (const auto& [category, sum] : sums) {
    means[category] = scored > 0 ? sum / scored : 0.0;
  }
  gdr::io::atomic_write(
      opt.out, gdr::eval::render_toxicity_report(means, scored) + "\n");

  gdr::manifest::RunManifest manifest;
  manifest.records = scored;
  manifest.failures = skipped;
  manifest.input_digests[opt.in] = gdr::digest::file_sha256_hex(opt.in);
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

// --- eval diversity ----------------------------------------------------------

struct EvalDiversityOptions {
  std::string in;
  std::string out;
  std::string field = "auto";
  int sample = 100;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string embedder = "none";
  int dim = 256;
  std::string embeddings_csv;
};

void run_eval_diversity(const GlobalState& state,
                        const EvalDiversityOptions& opt) {
  Timer timer;
  auto texts = load_texts(opt.in, opt.field);
  gdr::eval::Embedder embedder;
  if (opt.embedder == "hashed") {
    int dim = opt.dim;
    embedder = [dim](std::string_view doc) {
      return gdr::eval::hashed_embedding(doc, dim);
    };
  } else if (opt.embedder != "none") {
    throw gdr::InputError("embedder must be none or hashed");
  }
  int jobs = opt.jobs > 0
                 ? opt.jobs
                 : static_cast<int>(
                       std::max(1u, std::thread::hardware_concurrency()));
  auto report = gdr::eval::mean_pairwise_diversity(texts, opt.sample,
                                                   opt.seed, embedder, jobs);
  gdr::io::atomic_write(opt.out,
                        gdr::eval::render_diversity_report(report) + "\n");
  if (!opt.embeddings_csv.empty()) {
    if (!embedder) {
      throw gdr::InputError("--embeddings-csv needs --embedder hashed");
    }
    gdr::eval::write_embeddings_csv(opt.embeddings_csv, texts, embedder);
  }

  gdr::manifest::RunManifest manifest;
  manifest.records = static_cast<long long>(texts.size());
  manifest.input_digests[opt.in] = gdr::digest::file_sha256_hex(opt.in);
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

// --- quiz --------------------------------------------------------------------

struct QuizBuildOptions {
  std::string in;  // refined detox JSONL
  int k = 50;
  std::uint64_t seed = 0;
  std::string out;
};

void run_quiz_build(const GlobalState& state, const QuizBuildOptions& opt) {
  Timer timer;
  auto refined = gdr::refine::read_refined_jsonl(opt.in);
  std::vector<std::pair<std::string, gdr::detox::DetoxOutput>> outputs;
  for (const auto& record : refined) {
    if (record.failed) continue;
    int expected = 0;
    for (auto pos = record.input.find(gdr::detox::kStartOfMessage);
         pos != std::string::npos;
         pos = record.input.find(gdr::detox::kStartOfMessage, pos + 1)) {
      ++expected;
    }
    try {
      outputs.emplace_back(
          record.record_id,
          gdr::detox::parse_detox_output(
              record.output,
              expected > 0 ? std::optional<int>(expected) : std::nullopt));
    } catch (const gdr::ParseError& e) {
      std::cerr << "warning: record " << record.record_id
                << " skipped: " << e.what() << "\n";
    }
  }
  auto items = gdr::detox::build_quiz(outputs, opt.k, opt.seed);
  gdr::detox::write_quiz_jsonl(opt.out, items);

  gdr::manifest::RunManifest manifest;
  manifest.records = static_cast<long long>(items.size());
  manifest.input_digests[opt.in] = gdr::digest::file_sha256_hex(opt.in);
  manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
  finish_manifest(state, opt.out, std::move(manifest), timer);
  std::cout << opt.out << "\n";
}

struct QuizGradeOptions {
  std::string items;
  std::string responses;
  std::string out;
};

void run_quiz_grade(const GlobalState& state, const QuizGradeOptions& opt) {
  Timer timer;
  auto items = gdr::detox::read_quiz_jsonl(opt.items);
  auto responses = gdr::detox::read_responses_jsonl(opt.responses);
  double accuracy = gdr::detox::grade_quiz(items, responses);
  bool tagged = false;
  for (const auto& item : items) {
    if (item.tag == "public" || item.tag == "private") {
      tagged = true;
      break;
    }
  }
  json report = {{"accuracy", accuracy},
                 {"n_items", items.size()},
                 {"reference",
                  {{"note", "published quiz accuracy for fine-tuned models"},
                   {"accuracy",
                    {{"no_fine_tuning", 0.88}, {"refined", 0.92}}}}}};
  if (tagged) {
    auto score = gdr::detox::score_public_private(items, responses);
    report["public_accuracy"] = score.public_accuracy;
    report["private_accuracy"] = score.private_accuracy;
    report["n_public"] = score.n_public;
    report["n_private"] = score.n_private;
    report["reference"]["public_private"] = {
        {"raw", {{"public", 0.32}, {"private", 0.26}}},
        {"detector_redacted", {{"public", 0.00}, {"private", 0.00}}},
        {"refined", {{"public", 0.25}, {"private", 0.00}}}};
  }
  if (!opt.out.empty()) {
    gdr::io::atomic_write(opt.out, report.dump(2) + "\n");
    gdr::manifest::RunManifest manifest;
    manifest.records = static_cast<long long>(items.size());
    manifest.input_digests[opt.items] =
        gdr::digest::file_sha256_hex(opt.items);
    manifest.input_digests[opt.responses] =
        gdr::digest::file_sha256_hex(opt.responses);
    manifest.output_digests[opt.out] = gdr::digest::file_sha256_hex(opt.out);
    finish_manifest(state, opt.out, std::move(manifest), timer);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "accuracy %.4f over %zu items", accuracy,
                items.size());
  std::cout << buf << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  GlobalState state;
  state.command_line = join_args(argc, argv);

  CLI::App app{"generative data refinement toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML-style file");

  GenBenchmarkOptions gen_opt;
  auto* gen =
      app.add_subcommand("gen-benchmark", "render a labeled PII benchmark");
  gen->add_option("--categories", gen_opt.categories,
                  "comma-separated category ids (default: whole catalog)");
  gen->add_option("--n-per-category", gen_opt.n_per_category,
                  "positives per category (even, >= 2)");
  gen->add_option("--seed", gen_opt.seed, "root seed");
  gen->add_option("--out", gen_opt.out, "output JSONL path")->required();
  gen->add_option("--catalog", gen_opt.catalog_path, "format DSL file");
  gen->add_option("--hot-words", gen_opt.hot_words_path, "hot-word file");
  gen->add_option("--templates", gen_opt.templates_path,
                  "sentence template bank (JSONL)");

  GenSftOptions sft_opt;
  auto* sft = app.add_subcommand("gen-sft", "export instruction-tuning pairs");
  sft->add_option("--n", sft_opt.n, "number of pairs");
  sft->add_option("--seed", sft_opt.seed, "root seed");
  sft->add_option("--out", sft_opt.out, "output JSONL path")->required();
  sft->add_option("--categories", sft_opt.categories,
                  "comma-separated category ids");

  RefineOptions refine_opt;
  auto* refine = app.add_subcommand("refine", "rewrite a dataset");
  refine->add_option("--task", refine_opt.task,
                     "pii | companies | code | detox");
  refine->add_option("--backend", refine_opt.backend_kind,
                     "http | oracle | identity | scrambler");
  refine->add_option("--backend-id", refine_opt.backend_id,
                     "identifier recorded in outputs");
  refine->add_option("--in", refine_opt.in, "input JSONL")->required();
  refine->add_option("--out", refine_opt.out, "output JSONL")->required();
  refine->add_option("--cache-dir", refine_opt.cache_dir, "response cache");
  refine->add_option("--shots", refine_opt.shots, "k_pos,k_neg");
  refine->add_option("--model", refine_opt.model, "model name (http)");
  refine->add_option("--endpoint", refine_opt.endpoint, "endpoint (http)");
  refine->add_option("--temperature", refine_opt.temperature, "sampling");
  refine->add_option("--max-chars", refine_opt.max_chars,
                     "output length limit");
  refine->add_option("--jobs", refine_opt.jobs, "worker bound");
  refine->add_option("--seed", refine_opt.seed, "root seed (shots)");
  refine->add_option("--max-attempts", refine_opt.max_attempts,
                     "retry budget");

  auto* eval = app.add_subcommand("eval", "score refinements");
  eval->require_subcommand(1);

  EvalPiiOptions eval_pii_opt;
  auto* eval_pii = eval->add_subcommand("pii", "recall/precision report");
  eval_pii->add_option("--bench", eval_pii_opt.bench, "benchmark JSONL")
      ->required();
  eval_pii->add_option("--refined", eval_pii_opt.refined, "refined JSONL")
      ->required();
  eval_pii->add_option("--out", eval_pii_opt.out, "report path")->required();
  eval_pii->add_flag("--weighted", eval_pii_opt.weighted,
                     "weight category means by sentence count");
  eval_pii->add_flag("--with-baseline", eval_pii_opt.with_baseline,
                     "add a rule-based detector row");
  eval_pii->add_option("--categories", eval_pii_opt.categories,
                       "baseline catalog subset");

  EvalCodeOptions eval_code_opt;
  auto* eval_code = eval->add_subcommand("code", "agreement matrices");
  eval_code->add_option("--refined", eval_code_opt.refined, "refined JSONL")
      ->required();
  eval_code
      ->add_option("--annotations", eval_code_opt.annotations,
                   "CSV file_path,line_number,label")
      ->required();
  eval_code->add_option("--out", eval_code_opt.out, "report path")->required();
  eval_code->add_option("--line-report", eval_code_opt.line_report,
                        "per-line JSONL with safety flags");

  EvalToxicityOptions eval_tox_opt;
  auto* eval_tox = eval->add_subcommand("toxicity", "toxicity means");
  eval_tox->add_option("--in", eval_tox_opt.in, "input JSONL")->required();
  eval_tox->add_option("--out", eval_tox_opt.out, "report path")->required();
  eval_tox->add_option("--scorer", eval_tox_opt.scorer, "lexicon | external");
  eval_tox->add_option("--lexicon", eval_tox_opt.lexicon_path,
                       "one term per line");
  eval_tox->add_option("--field", eval_tox_opt.field,
                       "text | input | output | auto");
  eval_tox->add_option("--endpoint", eval_tox_opt.endpoint,
                       "external scorer endpoint");

  EvalDiversityOptions eval_div_opt;
  auto* eval_div = eval->add_subcommand("diversity", "pairwise similarity");
  eval_div->add_option("--in", eval_div_opt.in, "input JSONL")->required();
  eval_div->add_option("--out", eval_div_opt.out, "report path")->required();
  eval_div->add_option("--field", eval_div_opt.field,
                       "text | input | output | auto");
  eval_div->add_option("--sample", eval_div_opt.sample, "subsample size");
  eval_div->add_option("--seed", eval_div_opt.seed, "sampling seed");
  eval_div->add_option("--jobs", eval_div_opt.jobs, "worker bound");
  eval_div->add_option("--embedder", eval_div_opt.embedder, "none | hashed");
  eval_div->add_option("--dim", eval_div_opt.dim, "embedding dimension");
  eval_div->add_option("--embeddings-csv", eval_div_opt.embeddings_csv,
                       "export embeddings for external projection");

  auto* quiz = app.add_subcommand("quiz", "knowledge-retention quizzes");
  quiz->require_subcommand(1);

  QuizBuildOptions quiz_build_opt;
  auto* quiz_build = quiz->add_subcommand("build", "subsample QA pairs");
  quiz_build->add_option("--in", quiz_build_opt.in, "refined detox JSONL")
      ->required();
  quiz_build->add_option("--k", quiz_build_opt.k, "quiz size");
  quiz_build->add_option("--seed", quiz_build_opt.seed, "sampling seed");
  quiz_build->add_option("--out", quiz_build_opt.out, "quiz JSONL")
      ->required();

  QuizGradeOptions quiz_grade_opt;
  auto* quiz_grade = quiz->add_subcommand("grade", "score responses");
  quiz_grade->add_option("--items", quiz_grade_opt.items, "quiz JSONL")
      ->required();
  quiz_grade
      ->add_option("--responses", quiz_grade_opt.responses, "responses JSONL")
      ->required();
  quiz_grade->add_option("--out", quiz_grade_opt.out, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const CLI::Option* config_opt = app.get_config_ptr();
  if (config_opt != nullptr && config_opt->count() > 0) {
    state.config_path = config_opt->as<std::string>();
  }

  try {
    if (gen->parsed()) run_gen_benchmark(state, gen_opt);
    if (sft->parsed()) run_gen_sft(state, sft_opt);
    if (refine->parsed()) run_refine(state, refine_opt);
    if (eval->parsed()) {
      if (eval_pii->parsed()) run_eval_pii(state, eval_pii_opt);
      if (eval_code->parsed()) run_eval_code(state, eval_code_opt);
      if (eval_tox->parsed()) run_eval_toxicity(state, eval_tox_opt);
      if (eval_div->parsed()) run_eval_diversity(state, eval_div_opt);
    }
    if (quiz->parsed()) {
      if (quiz_build->parsed()) run_quiz_build(state, quiz_build_opt);
      if (quiz_grade->parsed()) run_quiz_grade(state, quiz_grade_opt);
    }
  } catch (const gdr::BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const gdr::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
