#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gdr::checksum {

/// Standard Luhn (mod-10 double-every-second-digit) validity over a digit
/// string. Throws InputError on an empty input or any non-digit character.
bool luhn_check(std::string_view digits);

/// The digit that makes `payload + digit` Luhn-valid.
char luhn_check_digit(std::string_view payload);

/// IBAN-style mod-97 validity: move the leading four characters to the end,
/// expand letters to two-digit numbers (A=10 .. Z=35), and require the
/// resulting integer to leave remainder 1 mod 97. Returns false for inputs
/// shorter than five characters or containing non-alphanumerics.
bool mod97_check(std::string_view text);

/// Remainder mod 97 of the letter-expanded number, without rearrangement.
int mod97_remainder(std::string_view text);

/// Weighted-sum validity: digits are multiplied by `weights` applied
/// cyclically from the left; the total must be divisible by `modulus`.
/// Covers common national-identifier schemes (ABA routing 3-7-1 mod 10,
/// NHS 10..2 mod 11, and similar).
bool weighted_sum_check(std::string_view digits,
                        const std::vector<int>& weights, int modulus);

/// Check digit completing `payload + digit` under the weighted-sum rule,
/// or -1 when no digit in 0..9 satisfies it.
int weighted_sum_check_digit(std::string_view payload,
                             const std::vector<int>& weights, int modulus);

}  // namespace gdr::checksum
