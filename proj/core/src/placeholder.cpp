#include "gdr/placeholder.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "gdr/errors.hpp"
#include "gdr/text.hpp"

namespace gdr::placeholder {

namespace {

bool in_alphabet(char c, std::string_view alphabet) {
  return alphabet.find(c) != std::string_view::npos;
}

std::string bare_digits(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c >= '0' && c <= '9') out.push_back(c);
  }
  return out;
}

bool has_alpha(std::string_view s) {
  for (char c : s) {
    if (std::isalpha(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

struct Run {
  std::size_t begin;
  std::size_t end;
};

// Maximal runs of characters drawn from one alphabet.
std::vector<Run> maximal_runs(std::string_view s, std::string_view alphabet) {
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    if (in_alphabet(s[i], alphabet)) {
      std::size_t b = i;
      while (i < s.size() && in_alphabet(s[i], alphabet)) ++i;
      runs.push_back({b, i});
    } else {
      ++i;
    }
  }
  return runs;
}

}  // namespace

std::string cycling_digits(std::size_t length) {
  static constexpr std::string_view cycle = "1234567890";
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(cycle[i % 10]);
  return out;
}

std::string counting_digits(std::size_t length, int start) {
  std::string out;
  out.reserve(length);
  for (int n = start; out.size() < length; ++n) out += std::to_string(n);
  out.resize(length);
  return out;
}

std::string cycling_letters(std::size_t length) {
  static constexpr std::string_view cycle = "abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(cycle[i % 26]);
  return out;
}

std::string ideal_replacement(std::string_view original) {
  if (original.empty()) {
    throw InputError("ideal_replacement: empty original value");
  }
  std::string stripped = bare_digits(original);
  bool digit_style = !has_alpha(original) && !stripped.empty();
  // A generated value could coincide with the canonical sequence; shift the
  // sequence until neither the value nor its bare digits survive.
  for (int start = 1; start < 10; ++start) {
    std::string candidate =
        digit_style ? counting_digits(original.size(), start)
                    : cycling_letters(original.size());
    if (!digit_style && start > 1) {
      // rotate the letter cycle instead
      candidate = cycling_letters(original.size() + start);
      candidate.erase(0, start);
    }
    if (!text::contains(candidate, original) &&
        (stripped.empty() || !text::contains(candidate, stripped))) {
      return candidate;
    }
  }
  throw InvariantError("ideal_replacement: no safe candidate");
}

std::string scramble_digit_runs(std::string_view input, std::size_t min_run) {
  std::string out;
  out.reserve(input.size());
  std::size_t i = 0;
  while (i < input.size()) {
    if (input[i] >= '0' && input[i] <= '9') {
      std::size_t b = i;
      while (i < input.size() && input[i] >= '0' && input[i] <= '9') ++i;
      std::size_t len = i - b;
      out += len >= min_run ? cycling_digits(len)
                            : std::string(input.substr(b, len));
    } else {
      out.push_back(input[i]);
      ++i;
    }
  }
  return out;
}

Verification verify_placeholder(std::string_view original_value,
                                std::string_view output, const Policy& policy,
                                std::optional<std::string_view> input) {
  if (original_value.empty()) {
    throw InputError("verify_placeholder: empty original value");
  }
  if (text::contains(output, original_value)) {
    return {Verdict::No, "original value still present"};
  }
  std::string stripped = bare_digits(original_value);
  if (!stripped.empty() && stripped != original_value &&
      text::contains(output, stripped)) {
    return {Verdict::No, "delimiter-stripped value still present"};
  }

  std::size_t want = original_value.size();
  auto run_matches = [&](const Run& r) {
    return !policy.length_match || (r.end - r.begin) == want;
  };

  if (input.has_value()) {
    // The output must be the input with one occurrence of the value swapped
    // for a placeholder run; surrounding text byte-identical.
    std::string_view in = *input;
    for (std::size_t pos = in.find(original_value);
         pos != std::string_view::npos;
         pos = in.find(original_value, pos + 1)) {
      std::string_view prefix = in.substr(0, pos);
      std::string_view suffix = in.substr(pos + original_value.size());
      if (output.substr(0, prefix.size()) != prefix) continue;
      if (output.size() < prefix.size() + suffix.size()) continue;
      std::string_view mid = output.substr(
          prefix.size(), output.size() - prefix.size() - suffix.size());
      if (output.substr(prefix.size() + mid.size()) != suffix) continue;
      if (mid.empty()) continue;
      bool digits = std::all_of(mid.begin(), mid.end(), [&](char c) {
        return in_alphabet(c, policy.digit_alphabet);
      });
      bool letters = std::all_of(mid.begin(), mid.end(), [&](char c) {
        return in_alphabet(c, policy.letter_alphabet);
      });
      if (!digits && !letters) continue;
      if (!policy.length_match || mid.size() == want) {
        return Verification{Verdict::Yes, ""};
      }
    }
    return {Verdict::No, "removed without a length-matched placeholder"};
  }

  for (std::string_view alphabet :
       {std::string_view(policy.digit_alphabet),
        std::string_view(policy.letter_alphabet)}) {
    for (const Run& r : maximal_runs(output, alphabet)) {
      if (run_matches(r)) return {Verdict::Yes, ""};
    }
  }
  return {Verdict::No, "removed without a length-matched placeholder"};
}

}  // namespace gdr::placeholder
