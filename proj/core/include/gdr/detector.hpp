#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gdr/catalog.hpp"
#include "gdr/placeholder.hpp"

namespace gdr::detector {

enum class Trigger { Pattern, HotwordPattern };

struct Span {
  std::size_t begin = 0;  // byte offsets
  std::size_t end = 0;
  std::string category_id;
  Trigger trigger = Trigger::Pattern;
};

struct DetectionResult {
  std::vector<Span> spans;  // non-overlapping, position order
};

/// Surface-level rule detection, deliberately checksum-blind. Patterns with
/// delimiters, literals, or letters fire on sight; bare digit runs fire
/// only with a category hot-word within the context window. Overlaps
/// resolve longest-first, ties to the leftmost then lexicographically
/// smallest category.
DetectionResult detect(std::string_view doc, const format::Catalog& catalog);

/// Number of word tokens on either side of a bare digit run scanned for
/// hot-words.
constexpr int kHotWordWindow = 12;

/// Replaces each detected span with a same-length safe string from the
/// policy's letter bank, leaving everything else byte-identical.
std::string redact(std::string_view doc, const DetectionResult& result,
                   const placeholder::Policy& policy = {});

/// True iff detection finds at least one span.
bool flag_document(std::string_view doc, const format::Catalog& catalog);

/// Dictionary-based stand-in for a statistical person-name classifier:
/// flags capitalized dictionary first names (deliberately eager, like the
/// service it emulates).
std::vector<Span> detect_person_names(std::string_view doc);

}  // namespace gdr::detector
