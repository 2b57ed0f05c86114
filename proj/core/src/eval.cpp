#include "gdr/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "gdr/backend.hpp"
#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/rng.hpp"
#include "gdr/text.hpp"

namespace gdr::eval {

namespace {

using nlohmann::json;

std::string bare_digits(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c >= '0' && c <= '9') out.push_back(c);
  }
  return out;
}

bool has_alpha(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalpha(c) != 0;
  });
}

// The removal predicate behind recall: gone verbatim, and for numeric
// values also gone as bare digits.
bool value_removed(std::string_view output, std::string_view ground_truth) {
  if (text::contains(output, ground_truth)) return false;
  if (!has_alpha(ground_truth)) {
    std::string digits = bare_digits(ground_truth);
    if (!digits.empty() && digits != ground_truth &&
        text::contains(output, digits)) {
      return false;
    }
  }
  return true;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double weighted_mean(const std::vector<std::pair<double, double>>& xw) {
  double sum = 0.0;
  double weight = 0.0;
  for (auto [x, w] : xw) {
    sum += x * w;
    weight += w;
  }
  return weight == 0.0 ? 0.0 : sum / weight;
}

// Sorted (hash, count) bigram profile for fast pair intersection.
struct BigramProfile {
  std::vector<std::pair<std::uint64_t, int>> counts;
  long long total = 0;
};

std::uint64_t fnv1a(std::string_view a, std::string_view b) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  feed(a);
  h ^= 0x1f;
  h *= 0x100000001b3ull;
  feed(b);
  return h;
}

BigramProfile bigram_profile(std::string_view doc) {
  auto tokens = text::tokenize(doc);
  BigramProfile profile;
  if (tokens.size() < 2) return profile;
  std::vector<std::uint64_t> hashes;
  hashes.reserve(tokens.size() - 1);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    hashes.push_back(fnv1a(tokens[i], tokens[i + 1]));
  }
  std::sort(hashes.begin(), hashes.end());
  for (std::size_t i = 0; i < hashes.size();) {
    std::size_t j = i;
    while (j < hashes.size() && hashes[j] == hashes[i]) ++j;
    profile.counts.emplace_back(hashes[i], static_cast<int>(j - i));
    i = j;
  }
  profile.total = static_cast<long long>(hashes.size());
  return profile;
}

double rouge2_from_profiles(const BigramProfile& a, const BigramProfile& b) {
  if (a.total == 0 && b.total == 0) return 1.0;
  if (a.total == 0 || b.total == 0) return 0.0;
  long long overlap = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.counts.size() && j < b.counts.size()) {
    if (a.counts[i].first < b.counts[j].first) {
      ++i;
    } else if (a.counts[i].first > b.counts[j].first) {
      ++j;
    } else {
      overlap += std::min(a.counts[i].second, b.counts[j].second);
      ++i;
      ++j;
    }
  }
  if (overlap == 0) return 0.0;
  double p = static_cast<double>(overlap) / static_cast<double>(b.total);
  double r = static_cast<double>(overlap) / static_cast<double>(a.total);
  return 2.0 * p * r / (p + r);
}

}  // namespace

EvalReport score_pii(const std::vector<bench::BenchmarkSentence>& sentences,
                     const std::vector<refine::RefinementRecord>& refined,
                     bool weighted_by_count) {
  std::unordered_map<std::string_view, const refine::RefinementRecord*> by_id;
  by_id.reserve(refined.size());
  for (const auto& r : refined) by_id[r.record_id] = &r;

  EvalReport report;
  report.weighted = weighted_by_count;
  for (const auto& sentence : sentences) {
    auto it = by_id.find(sentence.sentence_id);
    if (it == by_id.end()) {
      throw InputError("no refined record for sentence id " +
                       sentence.sentence_id);
    }
    const refine::RefinementRecord& record = *it->second;
    CategoryScore& score = report.per_category[sentence.category_id];
    if (sentence.polarity == bench::Polarity::Positive) {
      ++score.n_pos;
      if (record.failed) {
        ++score.failed_pos;  // a failure leaves the value in the corpus
      } else if (value_removed(record.output, sentence.ground_truth)) {
        ++score.hits;
      }
    } else {
      ++score.n_neg;
      if (record.failed) {
        ++score.failed_neg;
      } else if (text::contains(record.output, sentence.ground_truth)) {
        ++score.negatives_intact;
      } else {
        ++score.false_positives;
      }
    }
  }

  std::vector<double> recalls;
  std::vector<std::pair<double, double>> recalls_w;
  std::vector<double> precisions;
  std::vector<std::pair<double, double>> precisions_w;
  std::vector<double> fs;
  std::vector<double> preservations;
  for (auto& [category, score] : report.per_category) {
    if (score.n_pos > 0) {
      score.recall =
          static_cast<double>(score.hits) / static_cast<double>(score.n_pos);
      recalls.push_back(score.recall);
      recalls_w.emplace_back(score.recall, score.n_pos);
    }
    if (score.n_neg > 0) {
      int interventions = score.hits + score.false_positives;
      score.precision =
          interventions == 0
              ? 1.0
              : static_cast<double>(score.hits) /
                    static_cast<double>(interventions);
      precisions.push_back(*score.precision);
      precisions_w.emplace_back(*score.precision, score.n_neg);
      score.f = f_score(*score.precision, score.recall);
      fs.push_back(*score.f);
      int valid_neg = score.n_neg - score.failed_neg;
      if (valid_neg > 0) {
        score.negative_preservation =
            static_cast<double>(score.negatives_intact) /
            static_cast<double>(valid_neg);
        preservations.push_back(*score.negative_preservation);
      }
    }
  }
  report.mean_recall =
      weighted_by_count ? weighted_mean(recalls_w) : mean_of(recalls);
  if (!precisions.empty()) {
    report.mean_precision = weighted_by_count ? weighted_mean(precisions_w)
                                              : mean_of(precisions);
  }
  if (!fs.empty()) report.mean_f = mean_of(fs);
  if (!preservations.empty()) {
    report.mean_negative_preservation = mean_of(preservations);
  }
  return report;
}

std::map<std::string, double> score_recall(
    const std::vector<bench::BenchmarkSentence>& sentences,
    const std::vector<refine::RefinementRecord>& refined) {
  std::map<std::string, double> out;
  for (const auto& [category, score] : score_pii(sentences, refined).per_category) {
    out[category] = score.recall;
  }
  return out;
}

std::map<std::string, double> score_precision(
    const std::vector<bench::BenchmarkSentence>& sentences,
    const std::vector<refine::RefinementRecord>& refined) {
  std::map<std::string, double> out;
  for (const auto& [category, score] :
       score_pii(sentences, refined).per_category) {
    if (score.precision.has_value()) out[category] = *score.precision;
  }
  return out;
}

double f_score(double precision, double recall) {
  if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0) {
    throw InputError("f_score inputs must lie in [0,1]");
  }
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

ConfusionMatrix confusion(const std::vector<bool>& labels,
                          const std::vector<bool>& predictions,
                          std::string level) {
  if (labels.size() != predictions.size()) {
    throw InputError("confusion: length mismatch (" +
                     std::to_string(labels.size()) + " labels, " +
                     std::to_string(predictions.size()) + " predictions)");
  }
  ConfusionMatrix m;
  m.level = std::move(level);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] && predictions[i]) ++m.tp;
    if (!labels[i] && predictions[i]) ++m.fp;
    if (labels[i] && !predictions[i]) ++m.fn;
    if (!labels[i] && !predictions[i]) ++m.tn;
  }
  return m;
}

double rouge2_f(std::string_view a, std::string_view b) {
  return rouge2_from_profiles(bigram_profile(a), bigram_profile(b));
}

std::vector<float> hashed_embedding(std::string_view doc, int dim) {
  if (dim < 2) {
    throw InputError("embedding dimension must be at least 2");
  }
  std::vector<float> v(static_cast<std::size_t>(dim), 0.0f);
  auto tokens = text::tokenize(doc);
  auto bump = [&v, dim](std::uint64_t h) {
    float sign = (h >> 63) != 0 ? 1.0f : -1.0f;
    v[static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim))] += sign;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bump(fnv1a(tokens[i], ""));
    if (i + 1 < tokens.size()) bump(fnv1a(tokens[i], tokens[i + 1]));
  }
  double norm = 0.0;
  for (float x : v) norm += static_cast<double>(x) * x;
  if (norm > 0.0) {
    float inv = static_cast<float>(1.0 / std::sqrt(norm));
    for (float& x : v) x *= inv;
  }
  return v;
}

DiversityReport mean_pairwise_diversity(const std::vector<std::string>& corpus,
                                        int sample_size, std::uint64_t seed,
                                        const Embedder& embedder, int jobs) {
  if (sample_size < 2) {
    throw InputError("diversity sample size must be at least 2");
  }
  if (static_cast<std::size_t>(sample_size) > corpus.size()) {
    throw InputError("sample size exceeds corpus size");
  }

  // Sample without replacement.
  std::vector<std::size_t> indices(corpus.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  rng::Stream stream(rng::substream_seed(seed, "diversity"));
  for (int i = 0; i < sample_size; ++i) {
    std::size_t remaining = indices.size() - static_cast<std::size_t>(i);
    std::size_t j = static_cast<std::size_t>(i) +
                    stream.below(static_cast<std::uint32_t>(remaining));
    std::swap(indices[static_cast<std::size_t>(i)], indices[j]);
  }
  indices.resize(static_cast<std::size_t>(sample_size));

  std::vector<BigramProfile> profiles(indices.size());
  std::vector<std::vector<float>> embeddings;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    profiles[i] = bigram_profile(corpus[indices[i]]);
  }
  bool with_embeddings = static_cast<bool>(embedder);
  if (with_embeddings) {
    embeddings.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      embeddings[i] = embedder(corpus[indices[i]]);
    }
  }

  std::size_t n = indices.size();
  std::uint64_t n_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  // Fixed-size chunks summed in chunk order keep the reduction identical
  // for any worker count.
  constexpr std::uint64_t kChunk = 8192;
  std::uint64_t n_chunks = (n_pairs + kChunk - 1) / kChunk;
  std::vector<double> rouge_partial(n_chunks, 0.0);
  std::vector<double> cos_partial(n_chunks, 0.0);
  std::vector<double> l2_partial(n_chunks, 0.0);

  auto pair_at = [n](std::uint64_t k) {
    // Row-major upper triangle: find i with offset(i) <= k < offset(i+1).
    std::size_t i = 0;
    std::uint64_t remaining = k;
    std::uint64_t row = n - 1;
    while (remaining >= row) {
      remaining -= row;
      ++i;
      --row;
    }
    return std::pair<std::size_t, std::size_t>(i, i + 1 + remaining);
  };

  auto run_chunk = [&](std::uint64_t chunk) {
    std::uint64_t begin = chunk * kChunk;
    std::uint64_t end = std::min(n_pairs, begin + kChunk);
    if (begin >= end) return;
    auto [i, j] = pair_at(begin);
    double rouge_sum = 0.0;
    double cos_sum = 0.0;
    double l2_sum = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      rouge_sum += rouge2_from_profiles(profiles[i], profiles[j]);
      if (with_embeddings) {
        const auto& u = embeddings[i];
        const auto& v = embeddings[j];
        double dot = 0.0;
        for (std::size_t d = 0; d < u.size(); ++d) {
          dot += static_cast<double>(u[d]) * v[d];
        }
        dot = std::clamp(dot, -1.0, 1.0);
        cos_sum += 1.0 - dot;
        l2_sum += std::sqrt(std::max(0.0, 2.0 - 2.0 * dot));
      }
      if (++j >= n) {
        ++i;
        j = i + 1;
      }
    }
    rouge_partial[chunk] = rouge_sum;
    cos_partial[chunk] = cos_sum;
    l2_partial[chunk] = l2_sum;
  };

  int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n_chunks)));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          std::uint64_t c = next.fetch_add(1);
          if (c >= n_chunks) break;
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  double rouge_total = 0.0;
  double cos_total = 0.0;
  double l2_total = 0.0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    rouge_total += rouge_partial[c];
    cos_total += cos_partial[c];
    l2_total += l2_partial[c];
  }

  DiversityReport report;
  report.sample_size = sample_size;
  report.seed = seed;
  report.mean_pairwise_rouge2_f =
      rouge_total / static_cast<double>(n_pairs);
  if (with_embeddings) {
    report.mean_cosine_distance = cos_total / static_cast<double>(n_pairs);
    report.mean_l2_distance = l2_total / static_cast<double>(n_pairs);
  }
  return report;
}

void write_embeddings_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& corpus,
                          const Embedder& embedder) {
  if (!embedder) {
    throw InputError("embeddings export needs an embedder");
  }
  std::string out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto v = embedder(corpus[i]);
    out += std::to_string(i);
    for (float x : v) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), ",%.6g", static_cast<double>(x));
      out += buf;
    }
    out += '\n';
  }
  io::atomic_write(path, out);
}

std::map<std::string, double> lexicon_toxicity(
    std::string_view doc, const std::vector<std::string>& lexicon) {
  std::set<std::string> banned(lexicon.begin(), lexicon.end());
  auto tokens = text::tokenize(doc);
  if (tokens.empty()) {
    return {{"toxicity", 0.0}};
  }
  std::size_t matched = 0;
  for (const auto& tok : tokens) {
    if (banned.count(tok) > 0) ++matched;
  }
  double score = static_cast<double>(matched) /
                 static_cast<double>(tokens.size());
  return {{"toxicity", std::clamp(score, 0.0, 1.0)}};
}

PerspectiveClient::PerspectiveClient(std::string endpoint,
                                     std::string api_key_env)
    : endpoint_(std::move(endpoint)), api_key_env_(std::move(api_key_env)) {
  if (endpoint_.empty()) {
    const char* env = std::getenv("TOXICITY_API_ENDPOINT");
    if (env != nullptr) endpoint_ = env;
  }
  if (endpoint_.empty()) {
    throw InputError("toxicity scorer needs an endpoint");
  }
}

std::map<std::string, double> PerspectiveClient::score(
    std::string_view doc) const {
  static const char* kCategories[] = {"TOXICITY", "SEVERE_TOXICITY",
                                      "INSULT",   "PROFANITY",
                                      "THREAT",   "IDENTITY_ATTACK"};
  json attributes = json::object();
  for (const char* c : kCategories) attributes[c] = json::object();
  json body = {{"comment", json{{"text", std::string(doc)}}},
               {"languages", json::array({"en"})},
               {"requestedAttributes", attributes}};

  auto scheme_end = endpoint_.find("://");
  if (scheme_end == std::string::npos) {
    throw InputError("toxicity endpoint is not a URL: " + endpoint_);
  }
  auto path_start = endpoint_.find('/', scheme_end + 3);
  std::string base = path_start == std::string::npos
                         ? endpoint_
                         : endpoint_.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : endpoint_.substr(path_start);
  const char* key = std::getenv(api_key_env_.c_str());
  if (key != nullptr && *key != '\0') {
    path += (path.find('?') == std::string::npos ? "?key=" : "&key=");
    path += key;
  }

  httplib::Client client(base);
  client.set_read_timeout(60, 0);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw backend::TransportError("toxicity scorer transport failure: " +
                                  httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw backend::HttpStatusError(
        res->status, "toxicity scorer status " + std::to_string(res->status));
  }
  json parsed;
  try {
    parsed = json::parse(res->body);
  } catch (const json::exception& e) {
    throw backend::MalformedResponseError(
        std::string("toxicity response is not JSON: ") + e.what());
  }
  std::map<std::string, double> out;
  for (const char* c : kCategories) {
    try {
      out[text::to_lower(c)] = parsed.at("attributeScores")
                                   .at(c)
                                   .at("summaryScore")
                                   .at("value")
                                   .get<double>();
    } catch (const json::exception&) {
      // category not returned; skip
    }
  }
  if (out.empty()) {
    throw backend::MalformedResponseError(
        "toxicity response carried no attribute scores");
  }
  return out;
}

namespace {

json category_json(const CategoryScore& s) {
  json j = {{"n_pos", s.n_pos},     {"n_neg", s.n_neg},
            {"hits", s.hits},       {"false_positives", s.false_positives},
            {"recall", s.recall},   {"failed_pos", s.failed_pos},
            {"failed_neg", s.failed_neg}};
  if (s.precision.has_value()) j["precision"] = *s.precision;
  if (s.f.has_value()) j["f_score"] = *s.f;
  if (s.negative_preservation.has_value()) {
    j["negative_preservation"] = *s.negative_preservation;
  }
  return j;
}

}  // namespace

std::string render_pii_report(const EvalReport& report) {
  json per_category = json::object();
  for (const auto& [category, score] : report.per_category) {
    per_category[category] = category_json(score);
  }
  json aggregate = {{"mean_recall", report.mean_recall},
                    {"weighted", report.weighted}};
  if (report.mean_precision.has_value()) {
    aggregate["mean_precision"] = *report.mean_precision;
  }
  if (report.mean_f.has_value()) aggregate["mean_f_score"] = *report.mean_f;
  if (report.mean_negative_preservation.has_value()) {
    aggregate["mean_negative_preservation"] =
        *report.mean_negative_preservation;
  }
  json out = {
      {"per_category", per_category},
      {"aggregate", aggregate},
      {"reference",
       {{"note",
         "published full-scale results for side-by-side display; not "
         "reproduced at desk scale"},
        {"pii_removal",
         {{"detector_baseline",
           {{"recall", 0.53}, {"precision", 0.52}, {"f_score", 0.52}}},
          {"gdr", {{"recall", 0.99}, {"precision", 0.80}, {"f_score", 0.88}}}}}}},
  };
  return out.dump(2);
}

std::string render_toxicity_report(
    const std::map<std::string, double>& mean_by_category, int n_records) {
  json means = json::object();
  for (const auto& [category, value] : mean_by_category) {
    means[category] = value;
  }
  json out = {
      {"mean_by_category", means},
      {"n_records", n_records},
      {"reference",
       {{"note", "published mean toxicity scores"},
        {"mean_toxicity",
         {{"raw", 0.19}, {"refined", 0.13}, {"synthetic", 0.14}}}}},
  };
  return out.dump(2);
}

std::string render_diversity_report(const DiversityReport& report) {
  json j = {{"mean_pairwise_rouge2_f", report.mean_pairwise_rouge2_f},
            {"sample_size", report.sample_size},
            {"seed", report.seed}};
  if (report.mean_cosine_distance.has_value()) {
    j["mean_pairwise_cosine_distance"] = *report.mean_cosine_distance;
    j["mean_pairwise_l2_distance"] = *report.mean_l2_distance;
  }
  j["reference"] = {
      {"note",
       "published table labels the embedding column L2 while the text says "
       "cosine distance; both are reported here"},
      {"rouge2_f", {{"raw", 0.0037}, {"refined", 0.0038}, {"synthetic", 0.012}}},
      {"embedding_distance",
       {{"raw", 1.0}, {"refined", 1.1}, {"synthetic", 0.99}}}};
  return j.dump(2);
}

std::string render_code_report(const ConfusionMatrix& lines,
                               const ConfusionMatrix& documents) {
  auto matrix_json = [](const ConfusionMatrix& m) {
    return json{{"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn},
                {"tn", m.tn}, {"level", m.level}};
  };
  json out = {{"line_level", matrix_json(lines)},
              {"document_level", matrix_json(documents)}};
  return out.dump(2);
}

}  // namespace gdr::eval
