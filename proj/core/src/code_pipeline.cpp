#include "gdr/code_pipeline.hpp"

#include <algorithm>
#include <cctype>

#include "gdr/detector.hpp"
#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/text.hpp"

namespace gdr::code {

namespace {

bool glob_match(std::string_view pattern, std::string_view name) {
  // Classic backtracking match over '*' and '?'.
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t star = std::string_view::npos;
  std::size_t star_n = 0;
  while (n < name.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      star_n = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++star_n;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

struct QuoteSpan {
  std::size_t begin;  // content range, quotes excluded
  std::size_t end;
};

// Language-agnostic quoted-literal scanner: single, double, and backtick
// quotes with backslash escapes.
std::vector<QuoteSpan> quoted_spans(std::string_view line) {
  std::vector<QuoteSpan> spans;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '"' || c == '\'' || c == '`') {
      std::size_t content = i + 1;
      std::size_t j = content;
      while (j < line.size()) {
        if (line[j] == '\\') {
          j += 2;
          continue;
        }
        if (line[j] == c) break;
        ++j;
      }
      if (j >= line.size()) {
        // Unterminated: treat the tail as quoted, the conservative read.
        spans.push_back({content, line.size()});
        return spans;
      }
      spans.push_back({content, j});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return spans;
}

bool region_inside_quotes(const std::vector<QuoteSpan>& spans,
                          std::size_t begin, std::size_t end) {
  for (const auto& q : spans) {
    if (begin >= q.begin && end <= q.end) return true;
  }
  return false;
}

struct DiffRegion {
  std::size_t begin;       // shared begin offset
  std::size_t end_a;       // end in original
  std::size_t end_b;       // end in output
};

DiffRegion diff_region(std::string_view a, std::string_view b) {
  std::size_t begin = 0;
  while (begin < a.size() && begin < b.size() && a[begin] == b[begin]) {
    ++begin;
  }
  std::size_t ea = a.size();
  std::size_t eb = b.size();
  while (ea > begin && eb > begin && a[ea - 1] == b[eb - 1]) {
    --ea;
    --eb;
  }
  return {begin, ea, eb};
}

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

bool has_hex_run(std::string_view s, std::size_t min_len) {
  std::size_t run = 0;
  for (char c : s) {
    if (is_hex(c)) {
      if (++run >= min_len) return true;
    } else {
      run = 0;
    }
  }
  return false;
}

std::vector<std::string>& safe_strings_store() {
  static std::vector<std::string> store = {
      "example.com",        "example.org",      "test@example.com",
      "user@example.com",   "localhost",        "127.0.0.1",
      "0.0.0.0",            "10.0.0.0/24",      "192.168.0.1",
      "192.168.1.1",        "my house",         "123 main street",
      "john doe",           "jane doe",         "changeme",
      "password",           "password123",      "hunter2",
      "your_api_key_here",  "authorization_code",
      "encrypted_private_key", "client_secret", "api_key",
      "placeholder",        "dummy",            "sample",
      "xxxxxxxx",           "redacted",
  };
  return store;
}

bool matches_safe_default(std::string_view replaced) {
  std::string lowered = text::to_lower(text::trim(replaced));
  if (lowered.empty()) return false;
  for (const auto& safe : safe_strings_store()) {
    if (lowered == safe) return true;
  }
  return false;
}

bool all_placeholder_alphabet(std::string_view s) {
  if (s.empty()) return false;
  bool letters = true;
  bool digits = true;
  for (char c : s) {
    if (!(c >= 'a' && c <= 'z')) letters = false;
    if (!(c >= '0' && c <= '9')) digits = false;
  }
  return letters || digits;
}

}  // namespace

std::string language_hint_for(std::string_view path) {
  static const std::pair<const char*, const char*> kExtensions[] = {
      {".py", "python"}, {".js", "javascript"}, {".ts", "typescript"},
      {".java", "java"}, {".c", "c"},           {".h", "c"},
      {".cc", "cpp"},    {".cpp", "cpp"},       {".hpp", "cpp"},
      {".go", "go"},     {".rb", "ruby"},       {".rs", "rust"},
      {".cs", "csharp"}, {".php", "php"},       {".swift", "swift"},
      {".kt", "kotlin"}, {".sh", "shell"},      {".yml", "yaml"},
      {".yaml", "yaml"}, {".json", "json"},     {".xml", "xml"},
      {".sql", "sql"},   {".tf", "terraform"},  {".ini", "ini"},
      {".cfg", "ini"},   {".toml", "toml"},     {".env", "dotenv"}};
  for (const auto& [ext, hint] : kExtensions) {
    std::string_view e(ext);
    if (path.size() >= e.size() &&
        path.substr(path.size() - e.size()) == e) {
      return hint;
    }
  }
  return "text";
}

IngestResult ingest_codebase(const std::filesystem::path& root,
                             const std::vector<std::string>& include_globs) {
  namespace fs = std::filesystem;
  if (!fs::exists(root)) {
    throw InputError("ingest root does not exist: " + root.string());
  }
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    bool included = include_globs.empty();
    for (const auto& glob : include_globs) {
      if (glob_match(glob, name)) {
        included = true;
        break;
      }
    }
    if (included) paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end(), [&root](const fs::path& a,
                                                const fs::path& b) {
    return a.lexically_relative(root).string() <
           b.lexically_relative(root).string();
  });

  IngestResult result;
  for (const auto& path : paths) {
    std::string data;
    try {
      data = io::read_file(path);
    } catch (const InputError& e) {
      result.warnings.push_back(std::string("skipped: ") + e.what());
      continue;
    }
    SourceFile file;
    file.path = path.lexically_relative(root).string();
    std::size_t start = 0;
    while (start < data.size()) {
      auto nl = data.find('\n', start);
      if (nl == std::string::npos) {
        file.lines.push_back(data.substr(start));
        file.endings.emplace_back("");
        break;
      }
      bool crlf = nl > start && data[nl - 1] == '\r';
      file.lines.push_back(data.substr(start, nl - start - (crlf ? 1 : 0)));
      file.endings.emplace_back(crlf ? "\r\n" : "\n");
      start = nl + 1;
    }
    for (std::size_t i = 0; i < file.lines.size(); ++i) {
      CodeLine line;
      line.file_path = file.path;
      line.line_number = static_cast<int>(i) + 1;
      line.text = file.lines[i];
      line.language_hint = language_hint_for(file.path);
      result.lines.push_back(std::move(line));
    }
    result.files.push_back(std::move(file));
  }
  return result;
}

std::string reassemble(const SourceFile& file,
                       const std::map<int, std::string>& rewrites) {
  std::string out;
  for (std::size_t i = 0; i < file.lines.size(); ++i) {
    auto it = rewrites.find(static_cast<int>(i) + 1);
    out += it != rewrites.end() ? it->second : file.lines[i];
    out += file.endings[i];
  }
  return out;
}

const std::vector<std::string>& default_safe_strings() {
  return safe_strings_store();
}

void load_safe_defaults(const std::filesystem::path& path) {
  auto& store = safe_strings_store();
  for (const auto& line : io::read_lines(path)) {
    auto entry = text::to_lower(text::trim(line));
    if (entry.empty() || entry[0] == '#') continue;
    if (std::find(store.begin(), store.end(), entry) == store.end()) {
      store.push_back(entry);
    }
  }
}

SafetyReport safety_check(std::string_view original, std::string_view output) {
  SafetyReport report;
  report.hash_candidate = has_hex_run(original, 12);
  if (original == output) {
    return report;
  }
  DiffRegion region = diff_region(original, output);
  std::string_view replaced =
      original.substr(region.begin, region.end_a - region.begin);
  std::string_view replacement =
      output.substr(region.begin, region.end_b - region.begin);

  auto quotes = quoted_spans(original);
  if (!region_inside_quotes(quotes, region.begin, region.end_a)) {
    report.flags.insert(SafetyFlag::NonStringRewrite);
  }
  if (all_placeholder_alphabet(replaced) || matches_safe_default(replaced)) {
    report.flags.insert(SafetyFlag::PlaceholderToPlaceholder);
  }
  if (replaced.size() != replacement.size()) {
    report.flags.insert(SafetyFlag::LengthMismatch);
  }
  return report;
}

LineRewrite refine_line(const CodeLine& line, const backend::Descriptor& desc,
                        const refine::RefinementTask& task,
                        const refine::EngineOptions& options,
                        std::optional<std::string> ground_truth) {
  if (task.kind != TaskKind::CodeLine) {
    throw InputError("refine_line requires the code_line task");
  }
  LineRewrite rewrite;
  rewrite.line = line;
  if (text::trim(line.text).empty()) {
    // Nothing to ask about; blank lines pass through.
    rewrite.output = line.text;
    return rewrite;
  }
  refine::RecordInput input;
  input.record_id = line.file_path + ":" + std::to_string(line.line_number);
  input.input = line.text;
  input.ground_truth = std::move(ground_truth);
  refine::RefinementRecord record =
      refine::refine_record(input, task, desc, options);
  if (record.failed) {
    rewrite.failed = true;
    rewrite.output = line.text;  // keep the source intact on failure
  } else {
    rewrite.output = record.output;
  }
  rewrite.changed = rewrite.output != line.text;
  rewrite.safety = safety_check(line.text, rewrite.output);
  return rewrite;
}

std::vector<LineAnnotation> read_annotations_csv(
    const std::filesystem::path& path) {
  std::vector<LineAnnotation> out;
  int line_number = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_number;
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto first = trimmed.find(',');
    auto second = trimmed.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
      throw ParseError("expected file_path,line_number,label", line_number, 1);
    }
    std::string file_path = text::trim(trimmed.substr(0, first));
    std::string number = text::trim(trimmed.substr(first + 1,
                                                   second - first - 1));
    std::string label = text::to_lower(
        text::trim(trimmed.substr(second + 1)));
    if (file_path == "file_path") continue;  // header row
    LineAnnotation a;
    a.file_path = file_path;
    try {
      a.line_number = std::stoi(number);
    } catch (const std::exception&) {
      throw ParseError("bad line number '" + number + "'", line_number, 1);
    }
    if (label != "pii" && label != "clean") {
      throw ParseError("label must be pii or clean, got '" + label + "'",
                       line_number, 1);
    }
    a.pii = label == "pii";
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

AgreementReport agreement_from_predictions(
    const std::vector<LineAnnotation>& annotations,
    const std::map<std::pair<std::string, int>, bool>& predictions) {
  std::vector<bool> labels;
  std::vector<bool> predicted;
  std::map<std::string, std::pair<bool, bool>> by_document;  // label, pred
  std::set<std::pair<std::string, int>> annotated;
  for (const auto& a : annotations) {
    auto key = std::make_pair(a.file_path, a.line_number);
    if (!annotated.insert(key).second) {
      throw InputError("duplicate annotation for " + a.file_path + ":" +
                       std::to_string(a.line_number));
    }
    auto it = predictions.find(key);
    if (it == predictions.end()) {
      throw InputError("annotated line missing from rewrites: " +
                       a.file_path + ":" + std::to_string(a.line_number));
    }
    labels.push_back(a.pii);
    predicted.push_back(it->second);
    auto& doc = by_document[a.file_path];
    doc.first = doc.first || a.pii;
    doc.second = doc.second || it->second;
  }
  for (const auto& [key, unused] : predictions) {
    (void)unused;
    if (annotated.count(key) == 0) {
      throw InputError("rewrite for unannotated line: " + key.first + ":" +
                       std::to_string(key.second));
    }
  }
  AgreementReport report;
  report.lines = eval::confusion(labels, predicted, "line");
  std::vector<bool> doc_labels;
  std::vector<bool> doc_predictions;
  for (const auto& [path, lp] : by_document) {
    doc_labels.push_back(lp.first);
    doc_predictions.push_back(lp.second);
  }
  report.documents = eval::confusion(doc_labels, doc_predictions, "document");
  return report;
}

}  // namespace

AgreementReport score_agreement(
    const std::vector<LineRewrite>& rewrites,
    const std::vector<LineAnnotation>& annotations) {
  std::map<std::pair<std::string, int>, bool> predictions;
  for (const auto& r : rewrites) {
    predictions[{r.line.file_path, r.line.line_number}] = r.changed;
  }
  return agreement_from_predictions(annotations, predictions);
}

AgreementReport score_baseline_agreement(
    const std::vector<CodeLine>& lines, const format::Catalog& catalog,
    const std::vector<LineAnnotation>& annotations) {
  std::map<std::pair<std::string, int>, bool> predictions;
  for (const auto& line : lines) {
    predictions[{line.file_path, line.line_number}] =
        detector::flag_document(line.text, catalog);
  }
  return agreement_from_predictions(annotations, predictions);
}

}  // namespace gdr::code
