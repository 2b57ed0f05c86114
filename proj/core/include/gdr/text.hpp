#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gdr::text {

std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

bool contains(std::string_view haystack, std::string_view needle);

/// Replaces the first occurrence; returns the input unchanged when absent.
std::string replace_first(std::string_view s, std::string_view needle,
                          std::string_view replacement);

std::string replace_all(std::string_view s, std::string_view needle,
                        std::string_view replacement);

/// Lowercase tokens split on non-alphanumeric characters. The shared
/// tokenization for ROUGE, hot-word windows, quiz grading, and the lexicon
/// toxicity scorer.
std::vector<std::string> tokenize(std::string_view s);

/// Token spans (byte offsets) without lowercasing, for window arithmetic.
struct TokenSpan {
  std::size_t begin;
  std::size_t end;
};
std::vector<TokenSpan> token_spans(std::string_view s);

/// Number of UTF-8 code points in [0, byte_limit) of s.
std::size_t utf8_length(std::string_view s, std::size_t byte_limit);
std::size_t utf8_length(std::string_view s);

/// Substring by code-point offsets [begin, end).
std::string utf8_substr(std::string_view s, std::size_t begin,
                        std::size_t end);

}  // namespace gdr::text
