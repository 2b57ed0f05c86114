#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "gdr/errors.hpp"
#include "gdr/task.hpp"

namespace gdr::backend {

enum class Kind { Http, Oracle, Identity, Scrambler };

Kind kind_from_name(std::string_view name);
std::string_view kind_name(Kind kind);

struct Descriptor {
  std::string backend_id;
  Kind kind = Kind::Identity;
  std::string endpoint;    // http only; falls back to $REFINERY_ENDPOINT
  std::string model_name;  // http only
  std::string response_pointer = "/choices/0/message/content";
  std::string api_key_env = "REFINERY_API_KEY";
  int max_in_flight = 8;
};

/// Throws InputError when fields required by the kind are missing.
void check_descriptor(const Descriptor& desc);

enum class SentencePolarity { Unknown, Positive, Negative };

/// Ground-truth metadata riding along with a request so the deterministic
/// test backends can compute ideal or degenerate refinements.
struct RequestContext {
  TaskKind task = TaskKind::PiiSentence;
  std::string record_id;
  std::string input;  // the record text itself, not the assembled prompt
  std::optional<std::string> ground_truth;
  SentencePolarity polarity = SentencePolarity::Unknown;
};

struct CompletionRequest {
  std::string prompt;
  std::size_t max_output_chars = 1 << 16;
  double temperature = 0.0;
  RequestContext context;
};

/// Stable content hash identifying (prompt, backend, temperature); equal
/// inputs produce equal ids on every platform and run.
std::string request_id(const CompletionRequest& request,
                       std::string_view backend_id);

// --- error taxonomy for retry classification -------------------------------

class TransportError : public BackendError {
public:
  using BackendError::BackendError;
};

class HttpStatusError : public BackendError {
public:
  HttpStatusError(int status, const std::string& what)
      : BackendError(what), status_(status) {}
  int status() const { return status_; }

private:
  int status_;
};

class MalformedResponseError : public BackendError {
public:
  using BackendError::BackendError;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{200};
  double factor = 2.0;
  double jitter = 0.1;  // fraction of the delay
};

/// True for transport failures, HTTP 5xx, and 429.
bool retryable(const std::exception& e);

std::chrono::milliseconds retry_delay(const RetryPolicy& policy, int attempt,
                                      std::uint64_t jitter_entropy);

/// Runs the action, retrying retryable failures per the policy and
/// rethrowing the last error once attempts are exhausted.
template <typename Action>
auto with_retry(Action&& action, const RetryPolicy& policy)
    -> decltype(action()) {
  if (policy.max_attempts < 1) {
    throw InputError("retry policy needs max_attempts >= 1");
  }
  for (int attempt = 1;; ++attempt) {
    try {
      return action();
    } catch (const std::exception& e) {
      if (attempt >= policy.max_attempts || !retryable(e)) {
        throw;
      }
      auto entropy = static_cast<std::uint64_t>(
          std::chrono::steady_clock::now().time_since_epoch().count());
      std::this_thread::sleep_for(retry_delay(policy, attempt, entropy));
    }
  }
}

/// One completion. Http posts a chat-style JSON request and extracts the
/// first candidate's text; the three offline kinds compute their result
/// from the request context.
std::string complete(const Descriptor& desc, const CompletionRequest& request);

// --- response cache ---------------------------------------------------------

/// One file per entry: 8-byte magic, 32-byte SHA-256 of the payload, then
/// the UTF-8 response. Corrupt entries are discarded and refetched.
class ResponseCache {
public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<std::string> lookup(const std::string& id);
  void store(const std::string& id, std::string_view response);

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t corrupt() const { return corrupt_; }

private:
  std::filesystem::path entry_path(const std::string& id) const;

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t corrupt_ = 0;
};

/// Serves from the cache when possible; otherwise completes (with retry)
/// and stores the response.
std::string cached_complete(const Descriptor& desc,
                            const CompletionRequest& request,
                            ResponseCache& cache,
                            const RetryPolicy& policy = {});

}  // namespace gdr::backend
