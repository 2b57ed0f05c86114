#include "gdr/refine.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include <json.hpp>

#include "gdr/digest.hpp"
#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/prompts.hpp"
#include "gdr/text.hpp"

namespace gdr::refine {

namespace {

using nlohmann::json;

std::vector<std::uint32_t> decode_utf8(std::string_view s) {
  std::vector<std::uint32_t> cps;
  cps.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xe ? 3
                      : (c >> 3) == 0x1e             ? 4
                                                     : 1;
    std::uint32_t cp = c;
    for (std::size_t k = 1; k < len && i + k < s.size(); ++k) {
      cp = (cp << 8) | static_cast<unsigned char>(s[i + k]);
    }
    cps.push_back(cp);
    i += len;
  }
  return cps;
}

std::string_view placeholder_verdict_name(placeholder::Verdict v) {
  switch (v) {
    case placeholder::Verdict::Yes:
      return "yes";
    case placeholder::Verdict::No:
      return "no";
    case placeholder::Verdict::NotApplicable:
      return "not-applicable";
  }
  return "not-applicable";
}

placeholder::Verdict placeholder_verdict_from_name(std::string_view name) {
  if (name == "yes") return placeholder::Verdict::Yes;
  if (name == "no") return placeholder::Verdict::No;
  return placeholder::Verdict::NotApplicable;
}

}  // namespace

RefinementTask make_task(TaskKind kind,
                         std::optional<bench::ShotBank> shots) {
  if (shots.has_value() && !shots->shots.empty() &&
      !prompts::task_prompt(kind).shots_allowed) {
    throw InputError("shots are not supported for task " +
                     std::string(task_kind_name(kind)));
  }
  return RefinementTask{kind, std::move(shots)};
}

std::string format_shots(const bench::ShotBank& shots) {
  std::string out;
  for (const auto& shot : shots.shots) {
    if (!out.empty()) out += "\n";
    out += "Input: " + shot.input + "\nOutput: " + shot.output + "\n";
  }
  return out;
}

std::string build_prompt(const RefinementTask& task, std::string_view input) {
  if (input.empty()) {
    throw InputError("build_prompt: empty input");
  }
  if (task.shots.has_value() && !task.shots->shots.empty() &&
      !prompts::task_prompt(task.kind).shots_allowed) {
    throw InputError("shots are not supported for task " +
                     std::string(task_kind_name(task.kind)));
  }
  std::string shots_block;
  if (task.shots.has_value() && !task.shots->shots.empty()) {
    shots_block = format_shots(*task.shots) + "\n";
  }
  return prompts::instantiate(task.kind, input, shots_block);
}

std::string sanitize_output(std::string_view raw) {
  std::string s = text::trim(raw);
  if (s.rfind("```", 0) == 0) {
    auto first_newline = s.find('\n');
    auto closing = s.rfind("```");
    if (first_newline != std::string::npos && closing > first_newline) {
      s = text::trim(s.substr(first_newline + 1, closing - first_newline - 1));
    }
  }
  return s;
}

std::string sanitize_code_output(std::string_view raw) {
  auto strip_newlines = [](std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == '\n' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == '\n' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
  };
  std::string s = strip_newlines(raw);
  if (s.rfind("```", 0) == 0) {
    auto first_newline = s.find('\n');
    auto closing = s.rfind("```");
    if (first_newline != std::string::npos && closing > first_newline) {
      s = strip_newlines(
          s.substr(first_newline + 1, closing - first_newline - 1));
    }
  }
  return s;
}

double drift(std::string_view x, std::string_view y) {
  if (x == y) return 0.0;
  auto a = decode_utf8(x);
  auto b = decode_utf8(y);
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[b.size()]) /
         static_cast<double>(std::max(a.size(), b.size()));
}

RefinementRecord refine_record(const RecordInput& input,
                               const RefinementTask& task,
                               const backend::Descriptor& desc,
                               const EngineOptions& options) {
  RefinementRecord record;
  record.record_id = input.record_id;
  record.input = input.input;
  record.task_kind = task.kind;
  record.backend_id = desc.backend_id;

  std::string prompt = build_prompt(task, input.input);
  record.prompt_hash = digest::sha256_hex(prompt);

  backend::CompletionRequest request;
  request.prompt = std::move(prompt);
  request.max_output_chars = options.max_output_chars;
  request.temperature = options.temperature;
  request.context.task = task.kind;
  request.context.record_id = input.record_id;
  request.context.input = input.input;
  request.context.ground_truth = input.ground_truth;
  request.context.polarity = input.polarity;

  try {
    std::string raw =
        options.cache != nullptr
            ? backend::cached_complete(desc, request, *options.cache,
                                       options.retry)
            : backend::with_retry(
                  [&] { return backend::complete(desc, request); },
                  options.retry);
    record.output = task.kind == TaskKind::CodeLine
                        ? sanitize_code_output(raw)
                        : sanitize_output(raw);
  } catch (const BackendError& e) {
    record.failed = true;
    record.failure_reason = e.what();
    record.output.clear();
  }

  record.drift = drift(record.input, record.output);

  bool check_placeholder =
      !record.failed && input.ground_truth.has_value() &&
      input.polarity != backend::SentencePolarity::Negative &&
      (task.kind == TaskKind::PiiSentence || task.kind == TaskKind::CodeLine);
  if (check_placeholder) {
    record.placeholder_ok =
        placeholder::verify_placeholder(*input.ground_truth, record.output,
                                        options.placeholder_policy,
                                        std::string_view(record.input))
            .verdict;
  }
  return record;
}

RefinementRun refine_dataset(const std::vector<RecordInput>& inputs,
                             const RefinementTask& task,
                             const backend::Descriptor& desc,
                             const EngineOptions& options) {
  std::set<std::string> ids;
  for (const auto& in : inputs) {
    if (!ids.insert(in.record_id).second) {
      throw InputError("duplicate record id: " + in.record_id);
    }
  }

  RefinementRun run;
  run.records.resize(inputs.size());
  if (inputs.empty()) return run;

  int workers = std::max(1, std::min<int>(options.max_in_flight,
                                          static_cast<int>(inputs.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> fatal{false};
  std::exception_ptr fatal_error;
  std::mutex fatal_mutex;

  auto worker = [&] {
    while (!fatal.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1);
      if (i >= inputs.size()) break;
      try {
        run.records[i] = refine_record(inputs[i], task, desc, options);
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal.exchange(true)) {
          fatal_error = std::current_exception();
        }
        break;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal.load()) {
    std::rethrow_exception(fatal_error);
  }

  for (const auto& record : run.records) {
    if (record.failed) {
      run.failures.emplace_back(record.record_id, record.failure_reason);
    }
  }
  return run;
}

void write_refined_jsonl(const std::filesystem::path& path,
                         const std::vector<RefinementRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += json{{"record_id", r.record_id},
                {"input", r.input},
                {"output", r.output},
                {"task_kind", std::string(task_kind_name(r.task_kind))},
                {"backend_id", r.backend_id},
                {"drift", r.drift},
                {"placeholder_ok",
                 std::string(placeholder_verdict_name(r.placeholder_ok))},
                {"failed", r.failed}}
               .dump();
    out += '\n';
  }
  io::atomic_write(path, out);
}

std::vector<RefinementRecord> read_refined_jsonl(
    const std::filesystem::path& path) {
  std::vector<RefinementRecord> records;
  int line_number = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      RefinementRecord r;
      r.record_id = j.at("record_id").get<std::string>();
      r.input = j.at("input").get<std::string>();
      r.output = j.at("output").get<std::string>();
      r.task_kind = task_kind_from_name(j.at("task_kind").get<std::string>());
      r.backend_id = j.at("backend_id").get<std::string>();
      r.drift = j.at("drift").get<double>();
      r.placeholder_ok = placeholder_verdict_from_name(
          j.at("placeholder_ok").get<std::string>());
      r.failed = j.at("failed").get<bool>();
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad refined record: ") + e.what(),
                       line_number, 1);
    }
  }
  return records;
}

}  // namespace gdr::refine
