#include "fixtures.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <stdexcept>

#include "gdr/catalog.hpp"
#include "gdr/format_spec.hpp"
#include "gdr/io.hpp"
#include "gdr/rng.hpp"

namespace gdr::testing {

TempDir::TempDir(const std::string& tag) {
  auto base = std::filesystem::temp_directory_path();
  for (int i = 0;; ++i) {
    auto candidate = base / ("gdr-" + tag + "-" + std::to_string(::getpid()) +
                             "-" + std::to_string(i));
    std::error_code ec;
    if (std::filesystem::create_directories(candidate, ec)) {
      path_ = candidate;
      return;
    }
    if (i > 1000) throw std::runtime_error("cannot create temp dir");
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

const char* kCleanLines[] = {
    "import os",
    "def handler(request):",
    "    return compute(request)",
    "}",
    "console.log(count);",
    "total = total + rows[i]",
    "for (let i = 0; i < n; i++) {",
    "# accumulate per-shard totals",
    "if err != nil {",
    "        queue.push_back(item);",
    "const limit = 64",
    "print(f\"processed {count} rows\")",
    "return nil",
    "});",
    "    }",
};

struct PiiTemplate {
  const char* before;
  const char* after;
  const char* category;
};

const PiiTemplate kPiiLines[] = {
    {"api_key = \"", "\"", "google_api_key"},
    {"token := \"", "\"", "github_pat"},
    {"const SECRET = '", "';", "slack_bot_token"},
    {"password: \"", "\"", "aws_access_key"},
    {"# owner ssn ", "", "us_ssn"},
    {"account = \"", "\"  # prod", "bank_account"},
    {"card_on_file = '", "'", "cc_visa"},
};

}  // namespace

SyntheticCodeCorpus make_code_corpus(const std::filesystem::path& root,
                                     int n_files, int lines_per_file,
                                     std::uint64_t seed) {
  const auto& catalog = format::builtin_catalog();
  rng::Stream stream(rng::substream_seed(seed, "code-corpus"));
  SyntheticCodeCorpus corpus;
  corpus.root = root;
  std::filesystem::create_directories(root);

  for (int f = 0; f < n_files; ++f) {
    char name[32];
    std::snprintf(name, sizeof(name), "src/file_%02d.%s", f,
                  f % 3 == 0 ? "py" : f % 3 == 1 ? "js" : "go");
    std::string path = name;
    std::string ending = f % 2 == 0 ? "\n" : "\r\n";
    std::string body;
    for (int l = 1; l <= lines_per_file; ++l) {
      bool pii = f > 0 && stream.below(12) == 0;
      std::string text;
      if (pii) {
        const auto& tmpl = kPiiLines[stream.below(
            static_cast<std::uint32_t>(std::size(kPiiLines)))];
        auto value = format::generate(catalog.at(tmpl.category).spec,
                                      stream.next());
        text = std::string(tmpl.before) + value.raw + tmpl.after;
        corpus.ground_truth[path + ":" + std::to_string(l)] = value.raw;
      } else {
        text = kCleanLines[stream.below(
            static_cast<std::uint32_t>(std::size(kCleanLines)))];
      }
      body += text;
      body += ending;
      corpus.annotations.push_back({path, l, pii});
      ++corpus.total_lines;
    }
    io::atomic_write(root / path, body);
  }
  return corpus;
}

std::vector<std::pair<std::string, std::string>> toxic_chat_pairs() {
  return {
      {"You absolute idiot, the Golden Gate Bridge opened in 1937.",
       "Shut it, loser. Anyway, the bridge is in San Francisco."},
      {"Only a moron would think electric motors beat diesel on torque.",
       "Both of you are clowns. Go study motor theory."},
      {"That pathetic excuse for a paper ignored the control group.",
       "The reviewers were braindead, the control group had forty rats."},
      {"The new stadium seats eighty thousand people.",
       "Neat, when does it open?"},
      {"Your take is garbage. Willow bark contains salicin.",
       "Still tastes vile, but yes, aspirin came from salicin."},
      {"I hate this thread. The Nile is the longest river anyway.",
       "Some filth in here agrees the Amazon carries more water though."},
      {"Mercury orbits the sun in eighty-eight days.",
       "Correct, and Venus takes about two hundred twenty-five."},
      {"That dumb chart is upside down, quarterly revenue actually fell.",
       "Stop whining. Revenue fell nine percent, as filed."},
      {"Stupid question but do sharks have bones?",
       "No bones, you fool, just cartilage."},
      {"The museum's worthless audio guide skips the Rembrandt room.",
       "Still beats the disgusting coffee they sell at the entrance."},
  };
}

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) {
    throw std::runtime_error("popen failed for: " + command);
  }
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = ::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), n);
  }
  int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli_path() { return GDR_CLI_PATH; }

}  // namespace gdr::testing
