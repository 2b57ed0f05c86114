#include "gdr/benchmark_builder.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdint>

#include <json.hpp>

#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/placeholder.hpp"
#include "gdr/prompts.hpp"
#include "gdr/rng.hpp"
#include "gdr/text.hpp"

namespace gdr::bench {

namespace {

using nlohmann::json;

std::string pad4(int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", n);
  return buf;
}

BenchmarkSentence render_with_value(const SentenceTemplate& tmpl,
                                    std::string_view slot,
                                    std::string_view inserted,
                                    std::string typed_name) {
  std::string body = tmpl.text;
  if (!typed_name.empty()) {
    body = text::replace_first(body, "{pii_type}", typed_name);
  }
  auto byte_pos = body.find(slot);
  if (byte_pos == std::string::npos) {
    throw InputError("template '" + tmpl.template_id + "' lacks slot " +
                     std::string(slot));
  }
  BenchmarkSentence s;
  s.span_begin = text::utf8_length(body, byte_pos);
  s.span_end = s.span_begin + text::utf8_length(inserted);
  s.text = body.substr(0, byte_pos);
  s.text += inserted;
  s.text += body.substr(byte_pos + slot.size());
  s.ground_truth = inserted;
  s.polarity = tmpl.polarity;
  return s;
}

const format::CatalogEntry& pick_cycled(
    const std::vector<const format::CatalogEntry*>& entries, int i) {
  return *entries[static_cast<std::size_t>(i) % entries.size()];
}

}  // namespace

BenchmarkSentence render_positive(const SentenceTemplate& tmpl,
                                  const format::PiiValue& value,
                                  std::optional<std::string> type_name) {
  if (tmpl.polarity != Polarity::Positive) {
    throw InputError("render_positive needs a positive template");
  }
  bool typed = tmpl.has_type_slot();
  if (typed != type_name.has_value()) {
    throw InputError(typed ? "template '" + tmpl.template_id +
                                 "' needs a type name"
                           : "template '" + tmpl.template_id +
                                 "' has no {pii_type} slot");
  }
  BenchmarkSentence s = render_with_value(
      tmpl, "{pii}", value.raw, type_name.value_or(""));
  s.category_id = value.category_id;
  s.mentions_type = typed;
  return s;
}

BenchmarkSentence render_negative(const SentenceTemplate& tmpl,
                                  const format::FormatSpec& spec,
                                  const format::PiiValue& value) {
  if (tmpl.polarity != Polarity::Negative) {
    throw InputError("render_negative needs a negative template");
  }
  std::string inserted = format::strip_delimiters(spec, value.raw);
  BenchmarkSentence s = render_with_value(tmpl, "{value}", inserted, "");
  s.category_id = value.category_id;
  s.mentions_type = false;
  return s;
}

std::vector<BenchmarkSentence> build_benchmark(const format::Catalog& catalog,
                                               const TemplateBank& templates,
                                               int n_per_category,
                                               std::uint64_t seed) {
  if (n_per_category < 2 || n_per_category % 2 != 0) {
    throw InputError("n_per_category must be even and at least 2");
  }
  auto plain = templates.positives_plain();
  auto typed = templates.positives_typed();
  if (plain.empty() || typed.empty()) {
    throw InputError("empty template bank for positive polarity");
  }
  bool any_numeric = std::any_of(
      catalog.entries().begin(), catalog.entries().end(),
      [](const format::CatalogEntry& e) { return e.spec.numeric_only; });
  if (any_numeric && templates.negatives.empty()) {
    throw InputError("empty template bank for negative polarity");
  }

  std::vector<const format::CatalogEntry*> ordered;
  for (const auto& e : catalog.entries()) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(),
            [](const format::CatalogEntry* a, const format::CatalogEntry* b) {
              return a->spec.category_id < b->spec.category_id;
            });

  std::vector<BenchmarkSentence> out;
  for (const format::CatalogEntry* entry : ordered) {
    const auto& spec = entry->spec;
    rng::Stream stream(
        rng::substream_seed(seed, "bench/" + spec.category_id));
    std::vector<BenchmarkSentence> positives;
    std::vector<BenchmarkSentence> negatives;
    for (int i = 0; i < n_per_category; ++i) {
      format::PiiValue value = format::generate(spec, stream.next());
      bool with_type = i % 2 == 0;
      const SentenceTemplate* tmpl =
          with_type ? typed[stream.below(static_cast<uint32_t>(typed.size()))]
                    : plain[stream.below(static_cast<uint32_t>(plain.size()))];
      BenchmarkSentence pos = render_positive(
          *tmpl, value,
          with_type ? std::optional<std::string>(spec.display_name)
                    : std::nullopt);
      pos.sentence_id = spec.category_id + "-pos-" + pad4(i);
      if (!format::validate(spec, pos.ground_truth)) {
        throw InvariantError("ground truth fails validation: " +
                             pos.ground_truth);
      }
      positives.push_back(std::move(pos));

      if (spec.numeric_only) {
        const SentenceTemplate& neg_tmpl = templates.negatives[stream.below(
            static_cast<uint32_t>(templates.negatives.size()))];
        BenchmarkSentence neg = render_negative(neg_tmpl, spec, value);
        neg.sentence_id = spec.category_id + "-neg-" + pad4(i);
        negatives.push_back(std::move(neg));
      }
    }
    std::move(positives.begin(), positives.end(), std::back_inserter(out));
    std::move(negatives.begin(), negatives.end(), std::back_inserter(out));
  }
  return out;
}

ShotBank build_shot_bank(const format::Catalog& catalog,
                         const TemplateBank& templates, int k_pos, int k_neg,
                         std::uint64_t seed) {
  if (k_pos < 0 || k_neg < 0) {
    throw InputError("shot counts must be non-negative");
  }
  rng::Stream stream(rng::substream_seed(seed, "shots"));
  auto plain = templates.positives_plain();
  std::vector<const format::CatalogEntry*> all;
  std::vector<const format::CatalogEntry*> numeric;
  for (const auto& e : catalog.entries()) {
    all.push_back(&e);
    if (e.spec.numeric_only) numeric.push_back(&e);
  }
  if (k_pos > 0 && (all.empty() || plain.empty())) {
    throw InputError("shot bank needs a catalog and positive templates");
  }
  if (k_neg > 0 && (numeric.empty() || templates.negatives.empty())) {
    throw InputError("negative shots need numeric categories and templates");
  }

  std::vector<Shot> positives;
  for (int i = 0; i < k_pos; ++i) {
    const auto& entry = pick_cycled(all, i);
    format::PiiValue value = format::generate(entry.spec, stream.next());
    const SentenceTemplate* tmpl =
        plain[stream.below(static_cast<uint32_t>(plain.size()))];
    BenchmarkSentence s = render_positive(*tmpl, value);
    Shot shot;
    shot.input = s.text;
    shot.output = text::replace_first(
        s.text, s.ground_truth, placeholder::ideal_replacement(s.ground_truth));
    shot.polarity = Polarity::Positive;
    positives.push_back(std::move(shot));
  }
  std::vector<Shot> negatives;
  for (int i = 0; i < k_neg; ++i) {
    const auto& entry = pick_cycled(numeric, i);
    format::PiiValue value = format::generate(entry.spec, stream.next());
    const SentenceTemplate& tmpl = templates.negatives[stream.below(
        static_cast<uint32_t>(templates.negatives.size()))];
    BenchmarkSentence s = render_negative(tmpl, entry.spec, value);
    Shot shot;
    shot.input = s.text;
    shot.output = s.text;  // negatives pass through untouched
    shot.polarity = Polarity::Negative;
    negatives.push_back(std::move(shot));
  }

  ShotBank bank;
  std::size_t p = 0;
  std::size_t q = 0;
  while (p < positives.size() || q < negatives.size()) {
    if (p < positives.size()) bank.shots.push_back(std::move(positives[p++]));
    if (q < negatives.size()) bank.shots.push_back(std::move(negatives[q++]));
  }
  return bank;
}

std::vector<SftPair> build_sft_pairs(const format::Catalog& catalog,
                                     const TemplateBank& templates, int n,
                                     std::uint64_t seed) {
  if (n < 1) {
    throw InputError("sft pair count must be at least 1");
  }
  rng::Stream stream(rng::substream_seed(seed, "sft"));
  auto plain = templates.positives_plain();
  std::vector<const format::CatalogEntry*> all;
  std::vector<const format::CatalogEntry*> numeric;
  for (const auto& e : catalog.entries()) {
    all.push_back(&e);
    if (e.spec.numeric_only) numeric.push_back(&e);
  }
  std::vector<SftPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool negative = i % 2 == 1 && !numeric.empty();
    std::string input;
    std::string target;
    if (negative) {
      const auto& entry = pick_cycled(numeric, i / 2);
      format::PiiValue value = format::generate(entry.spec, stream.next());
      const SentenceTemplate& tmpl = templates.negatives[stream.below(
          static_cast<uint32_t>(templates.negatives.size()))];
      input = render_negative(tmpl, entry.spec, value).text;
      target = input;
    } else {
      const auto& entry = pick_cycled(all, i / 2);
      format::PiiValue value = format::generate(entry.spec, stream.next());
      const SentenceTemplate* tmpl =
          plain[stream.below(static_cast<uint32_t>(plain.size()))];
      BenchmarkSentence s = render_positive(*tmpl, value);
      input = s.text;
      target = text::replace_first(
          s.text, s.ground_truth,
          placeholder::ideal_replacement(s.ground_truth));
    }
    pairs.push_back(
        {prompts::instantiate(TaskKind::PiiSentence, input), target});
  }
  return pairs;
}

SentenceTemplate request_template(const backend::Descriptor& desc,
                                  TemplateKind kind, std::string template_id,
                                  double temperature,
                                  const backend::RetryPolicy& policy) {
  backend::CompletionRequest request;
  request.temperature = temperature;
  switch (kind) {
    case TemplateKind::PositivePlain:
      request.prompt = std::string(prompts::template_generation_prompt_positive());
      break;
    case TemplateKind::PositiveTyped:
      request.prompt = std::string(prompts::template_generation_prompt_positive_typed());
      break;
    case TemplateKind::Negative:
      request.prompt = std::string(prompts::template_generation_prompt_negative());
      break;
  }
  std::string raw = backend::with_retry(
      [&] { return backend::complete(desc, request); }, policy);
  // unwrap a possible fence, then take the JSON object
  std::string body = text::trim(raw);
  if (body.rfind("```", 0) == 0) {
    auto nl = body.find('\n');
    auto close = body.rfind("```");
    if (nl != std::string::npos && close > nl) {
      body = text::trim(body.substr(nl + 1, close - nl - 1));
    }
  }
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::exception& e) {
    throw backend::MalformedResponseError(
        std::string("template response is not JSON: ") + e.what());
  }
  SentenceTemplate tmpl;
  tmpl.template_id = std::move(template_id);
  try {
    tmpl.text = parsed.at("context_sentence").get<std::string>();
    tmpl.style = parsed.value("sentence_style", "");
  } catch (const json::exception& e) {
    throw backend::MalformedResponseError(
        std::string("template response missing field: ") + e.what());
  }
  tmpl.polarity = kind == TemplateKind::Negative ? Polarity::Negative
                                                 : Polarity::Positive;
  check_template(tmpl);
  if (kind == TemplateKind::PositiveTyped && !tmpl.has_type_slot()) {
    throw backend::MalformedResponseError(
        "typed template response lacks the {pii_type} slot");
  }
  return tmpl;
}

namespace {

json sentence_to_json(const BenchmarkSentence& s) {
  return json{{"sentence_id", s.sentence_id},
              {"category_id", s.category_id},
              {"polarity",
               s.polarity == Polarity::Positive ? "positive" : "negative"},
              {"text", s.text},
              {"ground_truth", s.ground_truth},
              {"span", json::array({s.span_begin, s.span_end})},
              {"mentions_type", s.mentions_type}};
}

BenchmarkSentence sentence_from_json(const json& j) {
  BenchmarkSentence s;
  s.sentence_id = j.at("sentence_id").get<std::string>();
  s.category_id = j.at("category_id").get<std::string>();
  s.polarity = j.at("polarity").get<std::string>() == "positive"
                   ? Polarity::Positive
                   : Polarity::Negative;
  s.text = j.at("text").get<std::string>();
  s.ground_truth = j.at("ground_truth").get<std::string>();
  s.span_begin = j.at("span").at(0).get<std::size_t>();
  s.span_end = j.at("span").at(1).get<std::size_t>();
  s.mentions_type = j.at("mentions_type").get<bool>();
  return s;
}

}  // namespace

void write_benchmark_jsonl(const std::filesystem::path& path,
                           const std::vector<BenchmarkSentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    out += sentence_to_json(s).dump();
    out += '\n';
  }
  io::atomic_write(path, out);
}

std::vector<BenchmarkSentence> read_benchmark_jsonl(
    const std::filesystem::path& path) {
  std::vector<BenchmarkSentence> out;
  int line_number = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(sentence_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad benchmark record: ") + e.what(),
                       line_number, 1);
    }
  }
  return out;
}

void write_sft_jsonl(const std::filesystem::path& path,
                     const std::vector<SftPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += json{{"prompt", p.prompt}, {"target", p.target}}.dump();
    out += '\n';
  }
  io::atomic_write(path, out);
}

}  // namespace gdr::bench
