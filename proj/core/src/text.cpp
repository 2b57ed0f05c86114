#include "gdr/text.hpp"

#include <cctype>

namespace gdr::text {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

// Leading byte of a UTF-8 sequence (anything but a continuation byte).
bool is_cp_start(unsigned char c) { return (c & 0xc0) != 0x80; }

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

std::string replace_first(std::string_view s, std::string_view needle,
                          std::string_view replacement) {
  auto pos = s.find(needle);
  if (pos == std::string_view::npos || needle.empty()) {
    return std::string(s);
  }
  std::string out(s.substr(0, pos));
  out += replacement;
  out += s.substr(pos + needle.size());
  return out;
}

std::string replace_all(std::string_view s, std::string_view needle,
                        std::string_view replacement) {
  if (needle.empty()) return std::string(s);
  std::string out;
  std::size_t start = 0;
  for (auto pos = s.find(needle); pos != std::string_view::npos;
       pos = s.find(needle, start)) {
    out += s.substr(start, pos - start);
    out += replacement;
    start = pos + needle.size();
  }
  out += s.substr(start);
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : s) {
    if (is_word_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) {
    tokens.push_back(std::move(cur));
  }
  return tokens;
}

std::vector<TokenSpan> token_spans(std::string_view s) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_word_char(static_cast<unsigned char>(s[i]))) {
      std::size_t b = i;
      while (i < s.size() && is_word_char(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      spans.push_back({b, i});
    } else {
      ++i;
    }
  }
  return spans;
}

std::size_t utf8_length(std::string_view s, std::size_t byte_limit) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < byte_limit && i < s.size(); ++i) {
    if (is_cp_start(static_cast<unsigned char>(s[i]))) ++n;
  }
  return n;
}

std::size_t utf8_length(std::string_view s) { return utf8_length(s, s.size()); }

std::string utf8_substr(std::string_view s, std::size_t begin,
                        std::size_t end) {
  std::vector<std::size_t> starts;
  starts.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_cp_start(static_cast<unsigned char>(s[i]))) starts.push_back(i);
  }
  starts.push_back(s.size());
  if (begin >= starts.size()) return {};
  std::size_t b = starts[begin];
  std::size_t e = end < starts.size() ? starts[end] : s.size();
  if (b >= e) return {};
  return std::string(s.substr(b, e - b));
}

}  // namespace gdr::text
