#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gdr/backend.hpp"
#include "gdr/catalog.hpp"
#include "gdr/eval.hpp"
#include "gdr/refine.hpp"

namespace gdr::code {

struct CodeLine {
  std::string file_path;  // relative to the ingest root
  int line_number = 1;    // 1-based
  std::string text;       // no terminator
  std::string language_hint;
};

/// One source file split into lines with per-line terminators recorded, so
/// reassembly is byte-exact.
struct SourceFile {
  std::string path;
  std::vector<std::string> lines;
  std::vector<std::string> endings;  // "\n", "\r\n", or "" on the last line
};

struct IngestResult {
  std::vector<SourceFile> files;   // lexicographic path order
  std::vector<CodeLine> lines;     // flattened, file then line order
  std::vector<std::string> warnings;
};

/// Walks root recursively, keeping files whose names match any glob
/// (`*` and `?` wildcards). Unreadable files are skipped with a warning.
IngestResult ingest_codebase(const std::filesystem::path& root,
                             const std::vector<std::string>& include_globs);

std::string language_hint_for(std::string_view path);

/// Byte-exact reconstruction of a source file, with any rewrites applied by
/// (1-based) line number.
std::string reassemble(const SourceFile& file,
                       const std::map<int, std::string>& rewrites = {});

enum class SafetyFlag { NonStringRewrite, PlaceholderToPlaceholder,
                        LengthMismatch };

struct SafetyReport {
  std::set<SafetyFlag> flags;
  bool hash_candidate = false;  // advisory: original carries a long hex run
};

/// Compares a line against its rewrite. Unchanged lines never flag.
/// NonStringRewrite: the changed region is not wholly inside a quoted
/// literal. PlaceholderToPlaceholder: the replaced text was already
/// placeholder-alphabet or a known safe default. LengthMismatch: the
/// replacement length differs from what it replaced.
SafetyReport safety_check(std::string_view original, std::string_view output);

/// The safe-default strings shipped with the toolkit; extend via
/// load_safe_defaults.
const std::vector<std::string>& default_safe_strings();
void load_safe_defaults(const std::filesystem::path& path);

struct LineRewrite {
  CodeLine line;
  std::string output;
  bool changed = false;
  bool failed = false;
  SafetyReport safety;
};

LineRewrite refine_line(const CodeLine& line, const backend::Descriptor& desc,
                        const refine::RefinementTask& task,
                        const refine::EngineOptions& options = {},
                        std::optional<std::string> ground_truth = {});

struct LineAnnotation {
  std::string file_path;
  int line_number = 1;
  bool pii = false;
};

/// CSV: file_path,line_number,label with label pii|clean. A header row is
/// permitted.
std::vector<LineAnnotation> read_annotations_csv(
    const std::filesystem::path& path);

struct AgreementReport {
  eval::ConfusionMatrix lines;
  eval::ConfusionMatrix documents;
};

/// Line-level prediction is `changed`; document-level is any-line-changed,
/// both scored against the annotations. Annotated lines must match the
/// rewritten lines exactly, in both directions.
AgreementReport score_agreement(const std::vector<LineRewrite>& rewrites,
                                const std::vector<LineAnnotation>& annotations);

/// Same matrices for a flag-based baseline: per-line prediction is whether
/// detection fires on the line, document-level is any-line-flagged.
AgreementReport score_baseline_agreement(
    const std::vector<CodeLine>& lines, const format::Catalog& catalog,
    const std::vector<LineAnnotation>& annotations);

}  // namespace gdr::code
