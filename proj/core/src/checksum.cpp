#include "gdr/checksum.hpp"

#include <cctype>

#include "gdr/errors.hpp"

namespace gdr::checksum {

namespace {

int luhn_sum(std::string_view digits, bool shift_parity) {
  // Doubled-digit lookup, indexed by position parity counted from the right.
  static constexpr int doubled[10] = {0, 2, 4, 6, 8, 1, 3, 5, 7, 9};
  int sum = 0;
  bool dbl = shift_parity;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    char c = *it;
    if (c < '0' || c > '9') {
      throw InputError("luhn: non-digit character in input");
    }
    int d = c - '0';
    sum += dbl ? doubled[d] : d;
    dbl = !dbl;
  }
  return sum;
}

}  // namespace

bool luhn_check(std::string_view digits) {
  if (digits.empty()) {
    throw InputError("luhn: empty input");
  }
  return luhn_sum(digits, false) % 10 == 0;
}

char luhn_check_digit(std::string_view payload) {
  // The appended digit sits in the undoubled position, so the payload's
  // parity shifts by one.
  int sum = payload.empty() ? 0 : luhn_sum(payload, true);
  return static_cast<char>('0' + (10 - sum % 10) % 10);
}

int mod97_remainder(std::string_view text) {
  int mod = 0;
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isdigit(uc)) {
      mod = (mod * 10 + (c - '0')) % 97;
    } else if (std::isalpha(uc)) {
      int v = std::toupper(uc) - 'A' + 10;
      mod = (mod * 10 + v / 10) % 97;
      mod = (mod * 10 + v % 10) % 97;
    } else {
      return -1;
    }
  }
  return mod;
}

bool mod97_check(std::string_view text) {
  if (text.size() < 5) return false;
  std::string rearranged(text.substr(4));
  rearranged.append(text.substr(0, 4));
  return mod97_remainder(rearranged) == 1;
}

bool weighted_sum_check(std::string_view digits,
                        const std::vector<int>& weights, int modulus) {
  if (digits.empty() || weights.empty() || modulus < 2) {
    throw InputError("weighted_sum: empty input or bad rule");
  }
  long long sum = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    char c = digits[i];
    if (c < '0' || c > '9') {
      throw InputError("weighted_sum: non-digit character in input");
    }
    sum += static_cast<long long>(c - '0') * weights[i % weights.size()];
  }
  return sum % modulus == 0;
}

int weighted_sum_check_digit(std::string_view payload,
                             const std::vector<int>& weights, int modulus) {
  long long sum = 0;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    sum += static_cast<long long>(payload[i] - '0') *
           weights[i % weights.size()];
  }
  int w = weights[payload.size() % weights.size()];
  for (int d = 0; d <= 9; ++d) {
    if ((sum + static_cast<long long>(d) * w) % modulus == 0) return d;
  }
  return -1;
}

}  // namespace gdr::checksum
