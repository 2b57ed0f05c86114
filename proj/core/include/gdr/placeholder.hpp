#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gdr::placeholder {

/// Replacement strings must be obviously fake (counting digits, alphabet
/// letters) and, by default, length-matched to the value they replace.
struct Policy {
  std::string digit_alphabet = "0123456789";
  std::string letter_alphabet = "abcdefghijklmnopqrstuvwxyz";
  bool length_match = true;
};

/// "1234567890" repeated to the requested length.
std::string cycling_digits(std::size_t length);

/// Decimal counting sequence "123456789101112..." truncated to the
/// requested length; `start` shifts the first number counted.
std::string counting_digits(std::size_t length, int start = 1);

/// "abcdefghijklmnopqrstuvwxyz" repeated to the requested length.
std::string cycling_letters(std::size_t length);

/// The canonical fake stand-in for a value: counting digits when the value
/// carries no letters, cycling letters otherwise, always length-matched and
/// never containing the original (or its bare digits) as a substring.
std::string ideal_replacement(std::string_view original);

/// Replaces every maximal digit run of at least `min_run` characters with
/// same-length cycling digits. The scrambler backend's whole behavior.
std::string scramble_digit_runs(std::string_view input,
                                std::size_t min_run = 8);

enum class Verdict { Yes, No, NotApplicable };

struct Verification {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
};

/// Checks that `output` removed `original_value` and put a policy-compliant
/// placeholder in its place.
///
/// Yes requires the value gone (verbatim and as bare digits) and a maximal
/// placeholder-alphabet run of matching length present; when `input` is
/// supplied the run must sit exactly where the value sat, with the
/// surrounding text unchanged. Still-present values are No; removed-but-no-
/// length-matched-run is No with a reason saying so.
Verification verify_placeholder(std::string_view original_value,
                                std::string_view output, const Policy& policy,
                                std::optional<std::string_view> input = {});

}  // namespace gdr::placeholder
