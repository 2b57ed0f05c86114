#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gdr/code_pipeline.hpp"

namespace gdr::testing {

/// Fresh directory under the system temp root, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

struct SyntheticCodeCorpus {
  std::filesystem::path root;
  std::vector<code::LineAnnotation> annotations;  // every line labeled
  // "file:line" -> embedded value, for lines labeled pii
  std::map<std::string, std::string> ground_truth;
  int total_lines = 0;
};

/// Writes a deterministic annotated codebase under root: a handful of
/// pseudo source files, roughly one line in twelve carrying a generated
/// identifier inside a string literal, LF and CRLF files mixed, the first
/// file fully clean.
SyntheticCodeCorpus make_code_corpus(const std::filesystem::path& root,
                                     int n_files, int lines_per_file,
                                     std::uint64_t seed);

/// Small chat-exchange corpus with lexicon-scored toxicity in most pairs.
std::vector<std::pair<std::string, std::string>> toxic_chat_pairs();

struct CommandResult {
  int exit_code = -1;
  std::string out;  // stdout only
};

/// Runs a shell command, capturing stdout; stderr goes to the inherited
/// stream.
CommandResult run_command(const std::string& command);

/// Path of the gdr CLI binary baked in at configure time.
std::string cli_path();

}  // namespace gdr::testing
