#include "gdr/format_spec.hpp"

#include <algorithm>
#include <cctype>

#include "gdr/checksum.hpp"
#include "gdr/errors.hpp"
#include "gdr/rng.hpp"

namespace gdr::format {

namespace {

constexpr std::string_view kDigits = "0123456789";
constexpr std::string_view kUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr std::string_view kAlnum =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

bool is_id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct Token {
  std::string value;
  int column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t b = i;
    if (line[i] == '\'') {
      ++i;
      while (i < line.size() && line[i] != '\'') ++i;
      if (i < line.size()) ++i;  // closing quote
    } else {
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
    }
    tokens.push_back({std::string(line.substr(b, i - b)),
                      static_cast<int>(b) + 1});
  }
  return tokens;
}

int parse_run_length(const Token& tok, int line_number) {
  std::string_view digits = std::string_view(tok.value).substr(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) {
        return c >= '0' && c <= '9';
      }) ||
      digits.size() > 4) {
    throw ParseError("malformed run segment '" + tok.value + "'", line_number,
                     tok.column);
  }
  int n = std::stoi(std::string(digits));
  if (n == 0) {
    throw ParseError("run length 0 in segment '" + tok.value + "'",
                     line_number, tok.column);
  }
  return n;
}

ChecksumRule parse_checksum_token(const Token& tok, int line_number) {
  ChecksumRule rule;
  if (tok.value == "luhn") {
    rule.kind = ChecksumKind::Luhn;
    return rule;
  }
  if (tok.value == "mod97") {
    rule.kind = ChecksumKind::Mod97;
    return rule;
  }
  if (tok.value.rfind("weighted_sum(", 0) == 0 && tok.value.back() == ')') {
    rule.kind = ChecksumKind::WeightedSum;
    std::string body =
        tok.value.substr(13, tok.value.size() - 14);  // inside parens
    auto semi = body.find(';');
    if (semi == std::string::npos) {
      throw ParseError("weighted_sum needs 'weights;modulus'", line_number,
                       tok.column);
    }
    std::string weights = body.substr(0, semi);
    std::string cur;
    for (char c : weights + ",") {
      if (c == ',') {
        if (cur.empty()) {
          throw ParseError("empty weight in weighted_sum", line_number,
                           tok.column);
        }
        rule.weights.push_back(std::stoi(cur));
        cur.clear();
      } else if (c >= '0' && c <= '9') {
        cur.push_back(c);
      } else {
        throw ParseError("bad weight character in weighted_sum", line_number,
                         tok.column);
      }
    }
    std::string mod = body.substr(semi + 1);
    if (mod.empty() || !std::all_of(mod.begin(), mod.end(), [](char c) {
          return c >= '0' && c <= '9';
        })) {
      throw ParseError("bad modulus in weighted_sum", line_number,
                       tok.column);
    }
    rule.modulus = std::stoi(mod);
    if (rule.weights.empty() || rule.modulus < 2) {
      throw ParseError("weighted_sum needs weights and modulus >= 2",
                       line_number, tok.column);
    }
    return rule;
  }
  throw ParseError("unknown checksum name '" + tok.value + "'", line_number,
                   tok.column);
}

bool is_checksum_token(const std::string& v) {
  return v == "luhn" || v == "mod97" || v.rfind("weighted_sum", 0) == 0;
}

// Effective segments for matching/rendering: luhn and weighted_sum add one
// check digit to the final digit run.
std::vector<Segment> effective_pattern(const FormatSpec& spec) {
  std::vector<Segment> segs = spec.pattern;
  if (spec.checksum.kind == ChecksumKind::Luhn ||
      spec.checksum.kind == ChecksumKind::WeightedSum) {
    segs.back().length += 1;
  }
  return segs;
}

bool char_matches(SegmentKind kind, char c) {
  switch (kind) {
    case SegmentKind::Digits:
      return c >= '0' && c <= '9';
    case SegmentKind::UpperAlpha:
      return c >= 'A' && c <= 'Z';
    case SegmentKind::Alnum:
      return std::isalnum(static_cast<unsigned char>(c)) != 0;
    case SegmentKind::Literal:
      return false;
  }
  return false;
}

std::string all_digits(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c >= '0' && c <= '9') out.push_back(c);
  }
  return out;
}

std::string remove_delimiters(const FormatSpec& spec, std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (spec.delimiters.find(c) == std::string::npos) out.push_back(c);
  }
  return out;
}

void validate_structure(const FormatSpec& spec, int line_number, int column) {
  if (spec.pattern.empty()) {
    throw ParseError("spec has no segments", line_number, column);
  }
  for (const auto& seg : spec.pattern) {
    if (seg.kind == SegmentKind::Literal) {
      for (char c : seg.literal) {
        if (c >= '0' && c <= '9') {
          throw ParseError("digit inside literal segment", line_number,
                           column);
        }
      }
    }
  }
  auto kind = spec.checksum.kind;
  if (kind == ChecksumKind::Luhn || kind == ChecksumKind::WeightedSum) {
    if (spec.pattern.back().kind != SegmentKind::Digits) {
      throw ParseError("luhn/weighted_sum require a final digit run",
                       line_number, column);
    }
  }
  if (kind == ChecksumKind::Mod97) {
    bool head_ok =
        spec.pattern.size() >= 2 &&
        ((spec.pattern[0].kind == SegmentKind::Literal &&
          spec.pattern[0].literal.size() == 2 &&
          std::isalpha(static_cast<unsigned char>(spec.pattern[0].literal[0])) &&
          std::isalpha(
              static_cast<unsigned char>(spec.pattern[0].literal[1]))) ||
         (spec.pattern[0].kind == SegmentKind::UpperAlpha &&
          spec.pattern[0].length == 2)) &&
        spec.pattern[1].kind == SegmentKind::Digits &&
        spec.pattern[1].length == 2;
    if (!head_ok) {
      throw ParseError(
          "mod97 requires a leading two-letter block followed by d2",
          line_number, column);
    }
    for (std::size_t i = 1; i < spec.pattern.size(); ++i) {
      if (spec.pattern[i].kind == SegmentKind::Literal) {
        throw ParseError("mod97 pattern cannot contain literals after the "
                         "country block",
                         line_number, column);
      }
    }
  }
}

}  // namespace

std::size_t FormatSpec::rendered_length() const {
  std::size_t n = 0;
  for (const auto& seg : pattern) {
    n += seg.kind == SegmentKind::Literal ? seg.literal.size()
                                          : static_cast<std::size_t>(seg.length);
  }
  if (checksum.kind == ChecksumKind::Luhn ||
      checksum.kind == ChecksumKind::WeightedSum) {
    n += 1;
  }
  return n;
}

bool FormatSpec::bare() const {
  return std::none_of(pattern.begin(), pattern.end(), [](const Segment& s) {
    return s.kind == SegmentKind::Literal;
  });
}

FormatSpec parse_format_spec(std::string_view line, int line_number) {
  auto tokens = split_tokens(line);
  if (tokens.size() < 3) {
    throw ParseError("expected 'id := segment+ [checksum]'", line_number, 1);
  }
  FormatSpec spec;
  const Token& id = tokens[0];
  if (id.value.empty() ||
      !std::all_of(id.value.begin(), id.value.end(), is_id_char)) {
    throw ParseError("bad category id '" + id.value + "'", line_number,
                     id.column);
  }
  spec.category_id = id.value;
  spec.display_name = id.value;
  std::replace(spec.display_name.begin(), spec.display_name.end(), '_', ' ');
  if (tokens[1].value != ":=") {
    throw ParseError("expected ':=' after category id", line_number,
                     tokens[1].column);
  }

  bool saw_checksum = false;
  for (std::size_t t = 2; t < tokens.size(); ++t) {
    const Token& tok = tokens[t];
    if (saw_checksum) {
      throw ParseError("checksum must be the final token", line_number,
                       tok.column);
    }
    if (tok.value.size() >= 2 && tok.value.front() == '\'') {
      if (tok.value.back() != '\'' || tok.value.size() < 3) {
        throw ParseError("unterminated or empty literal", line_number,
                         tok.column);
      }
      Segment seg;
      seg.kind = SegmentKind::Literal;
      seg.literal = tok.value.substr(1, tok.value.size() - 2);
      spec.pattern.push_back(seg);
      continue;
    }
    if (tok.value[0] == 'd' || tok.value[0] == 'a' || tok.value[0] == 'x') {
      bool run = tok.value.size() > 1 &&
                 std::isdigit(static_cast<unsigned char>(tok.value[1]));
      if (run) {
        Segment seg;
        seg.kind = tok.value[0] == 'd'   ? SegmentKind::Digits
                   : tok.value[0] == 'a' ? SegmentKind::UpperAlpha
                                         : SegmentKind::Alnum;
        seg.length = parse_run_length(tok, line_number);
        spec.pattern.push_back(seg);
        continue;
      }
    }
    if (is_checksum_token(tok.value)) {
      spec.checksum = parse_checksum_token(tok, line_number);
      saw_checksum = true;
      continue;
    }
    throw ParseError("unrecognized token '" + tok.value + "'", line_number,
                     tok.column);
  }

  validate_structure(spec, line_number, tokens.back().column);

  for (const auto& seg : spec.pattern) {
    if (seg.kind != SegmentKind::Literal) continue;
    for (char c : seg.literal) {
      if (spec.delimiters.find(c) == std::string::npos) {
        spec.delimiters.push_back(c);
      }
    }
  }
  spec.numeric_only =
      std::all_of(spec.pattern.begin(), spec.pattern.end(),
                  [](const Segment& s) {
                    return s.kind == SegmentKind::Literal ||
                           s.kind == SegmentKind::Digits;
                  }) &&
      std::any_of(spec.pattern.begin(), spec.pattern.end(),
                  [](const Segment& s) {
                    return s.kind == SegmentKind::Digits;
                  });
  return spec;
}

std::string render_format_spec(const FormatSpec& spec) {
  std::string out = spec.category_id + " :=";
  for (const auto& seg : spec.pattern) {
    out.push_back(' ');
    switch (seg.kind) {
      case SegmentKind::Literal:
        out += "'" + seg.literal + "'";
        break;
      case SegmentKind::Digits:
        out += "d" + std::to_string(seg.length);
        break;
      case SegmentKind::UpperAlpha:
        out += "a" + std::to_string(seg.length);
        break;
      case SegmentKind::Alnum:
        out += "x" + std::to_string(seg.length);
        break;
    }
  }
  switch (spec.checksum.kind) {
    case ChecksumKind::None:
      break;
    case ChecksumKind::Luhn:
      out += " luhn";
      break;
    case ChecksumKind::Mod97:
      out += " mod97";
      break;
    case ChecksumKind::WeightedSum: {
      out += " weighted_sum(";
      for (std::size_t i = 0; i < spec.checksum.weights.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(spec.checksum.weights[i]);
      }
      out += ";" + std::to_string(spec.checksum.modulus) + ")";
      break;
    }
  }
  return out;
}

PiiValue generate(const FormatSpec& spec, std::uint64_t seed) {
  rng::Stream stream(rng::substream_seed(seed, spec.category_id));

  auto draw_run = [&stream](SegmentKind kind, int length) {
    std::string_view alphabet = kind == SegmentKind::Digits ? kDigits
                                : kind == SegmentKind::UpperAlpha
                                    ? kUpper
                                    : kAlnum;
    std::string out;
    out.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) out.push_back(stream.pick(alphabet));
    return out;
  };

  std::string raw;
  for (int attempt = 0; attempt < 128; ++attempt) {
    raw.clear();
    for (const auto& seg : spec.pattern) {
      raw += seg.kind == SegmentKind::Literal ? seg.literal
                                              : draw_run(seg.kind, seg.length);
    }
    if (spec.checksum.kind == ChecksumKind::Luhn) {
      raw.push_back(checksum::luhn_check_digit(all_digits(raw)));
      break;
    }
    if (spec.checksum.kind == ChecksumKind::WeightedSum) {
      int d = checksum::weighted_sum_check_digit(
          all_digits(raw), spec.checksum.weights, spec.checksum.modulus);
      if (d < 0) continue;  // no completing digit; redraw
      raw.push_back(static_cast<char>('0' + d));
      break;
    }
    if (spec.checksum.kind == ChecksumKind::Mod97) {
      // Set the check digits (positions 2-3) so the rotated number leaves
      // remainder 1 mod 97.
      std::string rotated = raw.substr(4) + raw.substr(0, 2) + "00";
      int r = checksum::mod97_remainder(rotated);
      int check = 98 - r;
      raw[2] = static_cast<char>('0' + check / 10);
      raw[3] = static_cast<char>('0' + check % 10);
      break;
    }
    break;
  }
  if (!validate(spec, raw)) {
    throw InvariantError("generated value fails its own spec: " +
                         spec.category_id);
  }
  PiiValue value;
  value.category_id = spec.category_id;
  value.raw = raw;
  value.stripped = remove_delimiters(spec, raw);
  value.seed = seed;
  return value;
}

bool validate(const FormatSpec& spec, std::string_view candidate) {
  auto segs = effective_pattern(spec);
  std::size_t pos = 0;
  for (const auto& seg : segs) {
    if (seg.kind == SegmentKind::Literal) {
      if (candidate.substr(pos, seg.literal.size()) != seg.literal)
        return false;
      pos += seg.literal.size();
      continue;
    }
    for (int i = 0; i < seg.length; ++i, ++pos) {
      if (pos >= candidate.size() || !char_matches(seg.kind, candidate[pos]))
        return false;
    }
  }
  if (pos != candidate.size()) return false;

  switch (spec.checksum.kind) {
    case ChecksumKind::None:
      return true;
    case ChecksumKind::Luhn:
      return checksum::luhn_check(all_digits(candidate));
    case ChecksumKind::WeightedSum:
      return checksum::weighted_sum_check(all_digits(candidate),
                                          spec.checksum.weights,
                                          spec.checksum.modulus);
    case ChecksumKind::Mod97:
      return checksum::mod97_check(candidate);
  }
  return false;
}

std::string strip_delimiters(const FormatSpec& spec, std::string_view raw) {
  if (!spec.numeric_only) {
    throw InputError("strip_delimiters: category '" + spec.category_id +
                     "' is not numeric-only");
  }
  return remove_delimiters(spec, raw);
}

std::string strip_delimiters(const FormatSpec& spec, const PiiValue& value) {
  return strip_delimiters(spec, value.raw);
}

}  // namespace gdr::format
