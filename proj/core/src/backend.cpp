#include "gdr/backend.hpp"

#include <cstdlib>
#include <cstring>

#include <httplib.h>
#include <json.hpp>

#include "gdr/detox.hpp"
#include "gdr/digest.hpp"
#include "gdr/io.hpp"
#include "gdr/placeholder.hpp"
#include "gdr/rng.hpp"
#include "gdr/text.hpp"

namespace gdr::backend {

namespace {

using nlohmann::json;

constexpr char kCacheMagic[8] = {'G', 'D', 'R', 'C', 'A', 'C', 'H', '1'};

// Root folded with the record id to seed oracle name replacement.
constexpr std::uint64_t kOracleSeed = 0x6f7261636c65ull;

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InputError("endpoint is not a URL: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {url, "/"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string http_complete(const Descriptor& desc,
                          const CompletionRequest& request) {
  std::string endpoint = desc.endpoint.empty()
                             ? env_or_empty("REFINERY_ENDPOINT")
                             : desc.endpoint;
  if (endpoint.empty()) {
    throw InputError(
        "http backend needs an endpoint (descriptor or REFINERY_ENDPOINT)");
  }
  SplitUrl url = split_url(endpoint);

  json body = {
      {"model", desc.model_name},
      {"messages", json::array({json{{"role", "user"},
                                     {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens",
       std::max<std::size_t>(1, request.max_output_chars / 4)},
  };

  httplib::Client client(url.base);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  std::string key = env_or_empty(desc.api_key_env.c_str());
  if (!key.empty()) {
    headers.emplace("Authorization", "Bearer " + key);
  }

  auto res = client.Post(url.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("transport failure: " +
                         httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw HttpStatusError(res->status, "http status " +
                                           std::to_string(res->status) +
                                           " from " + endpoint);
  }
  json parsed;
  try {
    parsed = json::parse(res->body);
  } catch (const json::exception& e) {
    throw MalformedResponseError(std::string("response is not JSON: ") +
                                 e.what());
  }
  try {
    const json& node = parsed.at(json::json_pointer(desc.response_pointer));
    if (!node.is_string()) {
      throw MalformedResponseError("response pointer does not name a string");
    }
    return node.get<std::string>();
  } catch (const json::exception&) {
    throw MalformedResponseError("response pointer " + desc.response_pointer +
                                 " not found in body");
  }
}

std::string oracle_complete(const CompletionRequest& request) {
  const RequestContext& ctx = request.context;
  switch (ctx.task) {
    case TaskKind::PiiSentence: {
      if (ctx.polarity == SentencePolarity::Negative) {
        return ctx.input;
      }
      if (!ctx.ground_truth.has_value()) {
        throw InputError("oracle: positive record without ground truth");
      }
      if (!text::contains(ctx.input, *ctx.ground_truth)) {
        throw InputError("oracle: ground truth not present in input");
      }
      return text::replace_first(
          ctx.input, *ctx.ground_truth,
          placeholder::ideal_replacement(*ctx.ground_truth));
    }
    case TaskKind::CodeLine: {
      if (!ctx.ground_truth.has_value()) {
        return ctx.input;  // clean line
      }
      if (!text::contains(ctx.input, *ctx.ground_truth)) {
        throw InputError("oracle: annotated value not present in line");
      }
      return text::replace_first(
          ctx.input, *ctx.ground_truth,
          placeholder::ideal_replacement(*ctx.ground_truth));
    }
    case TaskKind::CompaniesJson: {
      detox::CompanyEntry entry = detox::company_from_json(ctx.input);
      std::uint64_t seed = rng::substream_seed(kOracleSeed, ctx.record_id);
      return detox::company_to_json(detox::oracle_refine_company(entry, seed));
    }
    case TaskKind::DetoxPair:
      return detox::oracle_detox_response(ctx.input,
                                          detox::default_toxic_lexicon());
  }
  throw InvariantError("oracle: unhandled task kind");
}

}  // namespace

Kind kind_from_name(std::string_view name) {
  if (name == "http") return Kind::Http;
  if (name == "oracle") return Kind::Oracle;
  if (name == "identity") return Kind::Identity;
  if (name == "scrambler") return Kind::Scrambler;
  throw InputError("unknown backend kind: " + std::string(name));
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Http:
      return "http";
    case Kind::Oracle:
      return "oracle";
    case Kind::Identity:
      return "identity";
    case Kind::Scrambler:
      return "scrambler";
  }
  return "unknown";
}

void check_descriptor(const Descriptor& desc) {
  if (desc.backend_id.empty()) {
    throw InputError("backend descriptor needs a backend_id");
  }
  if (desc.kind == Kind::Http && desc.model_name.empty()) {
    throw InputError("http backend needs a model name");
  }
  if (desc.max_in_flight < 1) {
    throw InputError("max_in_flight must be at least 1");
  }
}

std::string request_id(const CompletionRequest& request,
                       std::string_view backend_id) {
  if (request.prompt.empty()) {
    throw InputError("completion request has an empty prompt");
  }
  // Hash the raw IEEE bits of the temperature so the id never depends on
  // formatting.
  std::uint64_t bits = 0;
  static_assert(sizeof(bits) == sizeof(request.temperature));
  std::memcpy(&bits, &request.temperature, sizeof(bits));
  std::string material;
  material.reserve(request.prompt.size() + backend_id.size() + 24);
  material += request.prompt;
  material += '\x1f';
  material += backend_id;
  material += '\x1f';
  for (int i = 0; i < 8; ++i) {
    material += static_cast<char>((bits >> (8 * i)) & 0xff);
  }
  return digest::sha256_hex(material);
}

bool retryable(const std::exception& e) {
  if (dynamic_cast<const TransportError*>(&e) != nullptr) return true;
  if (const auto* status = dynamic_cast<const HttpStatusError*>(&e)) {
    return status->status() == 429 || status->status() >= 500;
  }
  return false;
}

std::chrono::milliseconds retry_delay(const RetryPolicy& policy, int attempt,
                                      std::uint64_t jitter_entropy) {
  double delay = static_cast<double>(policy.base_delay.count());
  for (int i = 1; i < attempt; ++i) delay *= policy.factor;
  double unit = static_cast<double>(rng::mix(jitter_entropy) % 10000) / 10000.0;
  delay += delay * policy.jitter * (2.0 * unit - 1.0);
  return std::chrono::milliseconds(
      std::max<long long>(0, static_cast<long long>(delay)));
}

std::string complete(const Descriptor& desc,
                     const CompletionRequest& request) {
  check_descriptor(desc);
  if (request.prompt.empty()) {
    throw InputError("completion request has an empty prompt");
  }
  switch (desc.kind) {
    case Kind::Http:
      return http_complete(desc, request);
    case Kind::Oracle:
      return oracle_complete(request);
    case Kind::Identity:
      return request.context.input;
    case Kind::Scrambler:
      return placeholder::scramble_digit_runs(request.context.input);
  }
  throw InvariantError("complete: unhandled backend kind");
}

ResponseCache::ResponseCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ResponseCache::entry_path(const std::string& id) const {
  return dir_ / (id + ".resp");
}

std::optional<std::string> ResponseCache::lookup(const std::string& id) {
  std::string data;
  try {
    data = io::read_file(entry_path(id));
  } catch (const InputError&) {
    std::lock_guard lock(mutex_);
    ++misses_;
    return std::nullopt;
  }
  bool ok = data.size() >= 40 &&
            std::memcmp(data.data(), kCacheMagic, sizeof(kCacheMagic)) == 0;
  if (ok) {
    auto expected = digest::sha256(std::string_view(data).substr(40));
    ok = std::memcmp(data.data() + 8, expected.data(), 32) == 0;
  }
  std::lock_guard lock(mutex_);
  if (!ok) {
    ++corrupt_;
    return std::nullopt;
  }
  ++hits_;
  return data.substr(40);
}

void ResponseCache::store(const std::string& id, std::string_view response) {
  std::string data(kCacheMagic, sizeof(kCacheMagic));
  auto sum = digest::sha256(response);
  data.append(reinterpret_cast<const char*>(sum.data()), sum.size());
  data += response;
  io::atomic_write(entry_path(id), data);
}

std::string cached_complete(const Descriptor& desc,
                            const CompletionRequest& request,
                            ResponseCache& cache, const RetryPolicy& policy) {
  std::string id = request_id(request, desc.backend_id);
  if (auto hit = cache.lookup(id)) {
    return *hit;
  }
  std::string response =
      with_retry([&] { return complete(desc, request); }, policy);
  cache.store(id, response);
  return response;
}

}  // namespace gdr::backend
