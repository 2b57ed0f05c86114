#include "gdr/detector.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gdr/errors.hpp"
#include "gdr/text.hpp"

namespace gdr::detector {

namespace {

using format::ChecksumKind;
using format::FormatSpec;
using format::Segment;
using format::SegmentKind;

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Segment walk with the checksum-extended final run. Surface only; the
// baseline deliberately never verifies checksums.
std::vector<Segment> surface_pattern(const FormatSpec& spec) {
  std::vector<Segment> segs = spec.pattern;
  if (spec.checksum.kind == ChecksumKind::Luhn ||
      spec.checksum.kind == ChecksumKind::WeightedSum) {
    segs.back().length += 1;
  }
  return segs;
}

std::size_t surface_length(const std::vector<Segment>& segs) {
  std::size_t n = 0;
  for (const auto& s : segs) {
    n += s.kind == SegmentKind::Literal ? s.literal.size()
                                        : static_cast<std::size_t>(s.length);
  }
  return n;
}

bool match_at(std::string_view doc, std::size_t pos,
              const std::vector<Segment>& segs) {
  std::size_t p = pos;
  for (const auto& seg : segs) {
    if (seg.kind == SegmentKind::Literal) {
      if (doc.substr(p, seg.literal.size()) != seg.literal) return false;
      p += seg.literal.size();
      continue;
    }
    for (int i = 0; i < seg.length; ++i, ++p) {
      if (p >= doc.size()) return false;
      char c = doc[p];
      bool ok = seg.kind == SegmentKind::Digits ? is_digit(c)
                : seg.kind == SegmentKind::UpperAlpha
                    ? (c >= 'A' && c <= 'Z')
                    : is_alnum(c);
      if (!ok) return false;
    }
  }
  return true;
}

bool word_boundaries(std::string_view doc, std::size_t begin,
                     std::size_t end) {
  if (begin > 0 && is_alnum(doc[begin - 1])) return false;
  if (end < doc.size() && is_alnum(doc[end])) return false;
  return true;
}

struct TokenizedDoc {
  std::vector<text::TokenSpan> spans;
  std::vector<std::string> lower;
};

TokenizedDoc tokenize_doc(std::string_view doc) {
  TokenizedDoc t;
  t.spans = text::token_spans(doc);
  t.lower.reserve(t.spans.size());
  for (const auto& span : t.spans) {
    t.lower.push_back(
        text::to_lower(doc.substr(span.begin, span.end - span.begin)));
  }
  return t;
}

bool hot_word_near(const TokenizedDoc& doc,
                   const std::vector<std::string>& hot_words,
                   std::size_t begin, std::size_t end) {
  if (hot_words.empty()) return false;
  std::set<std::string_view> words(hot_words.begin(), hot_words.end());
  // Token index covering the run.
  std::size_t t = 0;
  while (t < doc.spans.size() && doc.spans[t].end <= begin) ++t;
  std::size_t lo = t > static_cast<std::size_t>(kHotWordWindow)
                       ? t - kHotWordWindow
                       : 0;
  std::size_t hi = std::min(doc.spans.size(), t + kHotWordWindow + 1);
  for (std::size_t i = lo; i < hi; ++i) {
    if (doc.spans[i].begin >= begin && doc.spans[i].end <= end) {
      continue;  // the run itself
    }
    if (words.count(doc.lower[i]) > 0) return true;
  }
  return false;
}

}  // namespace

DetectionResult detect(std::string_view doc, const format::Catalog& catalog) {
  TokenizedDoc tokens = tokenize_doc(doc);
  std::vector<Span> candidates;

  for (const auto& entry : catalog.entries()) {
    const FormatSpec& spec = entry.spec;
    auto segs = surface_pattern(spec);
    std::size_t length = surface_length(segs);
    if (length == 0 || length > doc.size()) continue;

    if (!spec.numeric_only || !spec.bare()) {
      // Structured surface: delimiters, literals, or letter runs make the
      // shape distinctive enough to fire on sight.
      for (std::size_t pos = 0; pos + length <= doc.size(); ++pos) {
        if (!word_boundaries(doc, pos, pos + length)) continue;
        if (!match_at(doc, pos, segs)) continue;
        candidates.push_back(
            {pos, pos + length, spec.category_id, Trigger::Pattern});
      }
    }
    if (spec.numeric_only) {
      // Bare digit run of the stripped length, gated on a hot-word.
      std::size_t bare_len = 0;
      for (const auto& s : segs) {
        if (s.kind == SegmentKind::Digits) {
          bare_len += static_cast<std::size_t>(s.length);
        }
      }
      for (std::size_t pos = 0; pos + bare_len <= doc.size(); ++pos) {
        if (!word_boundaries(doc, pos, pos + bare_len)) continue;
        bool all_digits = true;
        for (std::size_t i = 0; i < bare_len && all_digits; ++i) {
          all_digits = is_digit(doc[pos + i]);
        }
        if (!all_digits) continue;
        // A delimiter-formatted match at this spot already covers it.
        if (!spec.bare() && match_at(doc, pos, segs)) continue;
        if (!hot_word_near(tokens, entry.hot_words, pos, pos + bare_len)) {
          continue;
        }
        candidates.push_back({pos, pos + bare_len, spec.category_id,
                              Trigger::HotwordPattern});
      }
    }
  }

  // Longest span wins, ties to the leftmost, then smallest category id.
  std::sort(candidates.begin(), candidates.end(),
            [](const Span& a, const Span& b) {
              auto la = a.end - a.begin;
              auto lb = b.end - b.begin;
              if (la != lb) return la > lb;
              if (a.begin != b.begin) return a.begin < b.begin;
              return a.category_id < b.category_id;
            });
  DetectionResult result;
  for (const auto& c : candidates) {
    bool overlaps = std::any_of(result.spans.begin(), result.spans.end(),
                                [&c](const Span& kept) {
                                  return c.begin < kept.end &&
                                         kept.begin < c.end;
                                });
    if (!overlaps) result.spans.push_back(c);
  }
  std::sort(result.spans.begin(), result.spans.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  return result;
}

std::string redact(std::string_view doc, const DetectionResult& result,
                   const placeholder::Policy& policy) {
  std::vector<Span> spans = result.spans;
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].end > doc.size() || spans[i].begin >= spans[i].end) {
      throw InputError("redact: span out of range");
    }
    if (i > 0 && spans[i].begin < spans[i - 1].end) {
      throw InputError("redact: overlapping spans");
    }
  }
  // Right to left keeps earlier offsets valid.
  std::string out(doc);
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    std::size_t len = it->end - it->begin;
    std::string safe(len, 'x');
    for (std::size_t i = 0; i < len; ++i) {
      safe[i] = policy.letter_alphabet[i % policy.letter_alphabet.size()];
    }
    out.replace(it->begin, len, safe);
  }
  return out;
}

bool flag_document(std::string_view doc, const format::Catalog& catalog) {
  return !detect(doc, catalog).spans.empty();
}

std::vector<Span> detect_person_names(std::string_view doc) {
  // Small dictionary; eager by design, like the service it stands in for.
  static const std::set<std::string_view> kFirstNames = {
      "alice",  "amelia", "anna",   "carlos", "clara",  "david", "diego",
      "elena",  "emma",   "evelyn", "george", "hannah", "igor",  "isabella",
      "james",  "john",   "julia",  "kenji",  "laura",  "liam",  "lucas",
      "maria",  "marcus", "marta",  "miguel", "nina",   "noah",  "olivia",
      "omar",   "pablo",  "peter",  "priya",  "rosa",   "samuel", "sofia",
      "thomas", "victor", "wei",    "yuki",   "zara"};
  std::vector<Span> spans;
  for (const auto& tok : text::token_spans(doc)) {
    std::string_view word = doc.substr(tok.begin, tok.end - tok.begin);
    if (word.empty() || !std::isupper(static_cast<unsigned char>(word[0]))) {
      continue;
    }
    if (kFirstNames.count(text::to_lower(word)) > 0) {
      spans.push_back({tok.begin, tok.end, "person_name", Trigger::Pattern});
    }
  }
  return spans;
}

}  // namespace gdr::detector
