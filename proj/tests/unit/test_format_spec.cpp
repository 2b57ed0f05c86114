#include <doctest.h>

#include "gdr/catalog.hpp"
#include "gdr/errors.hpp"
#include "gdr/format_spec.hpp"

using namespace gdr;
using format::ChecksumKind;
using format::SegmentKind;

TEST_CASE("parses the ssn-style spec") {
  auto spec = format::parse_format_spec("ssn := d3 '-' d2 '-' d4");
  CHECK(spec.category_id == "ssn");
  REQUIRE(spec.pattern.size() == 5);
  CHECK(spec.pattern[0].kind == SegmentKind::Digits);
  CHECK(spec.pattern[0].length == 3);
  CHECK(spec.pattern[1].literal == "-");
  CHECK(spec.numeric_only);
  CHECK(spec.delimiters == "-");
  CHECK(spec.checksum.kind == ChecksumKind::None);
  CHECK(spec.rendered_length() == 11);
}

TEST_CASE("luhn appends one check digit to the written run") {
  auto spec = format::parse_format_spec("card := d15 luhn");
  CHECK(spec.checksum.kind == ChecksumKind::Luhn);
  CHECK(spec.rendered_length() == 16);
  auto value = format::generate(spec, 9);
  CHECK(value.raw.size() == 16);
  CHECK(format::validate(spec, value.raw));
}

TEST_CASE("zero-length run is rejected with position info") {
  try {
    format::parse_format_spec("bad := d0");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("unknown checksum and malformed lines are rejected") {
  CHECK_THROWS_AS(format::parse_format_spec("x := d4 crc32"), ParseError);
  CHECK_THROWS_AS(format::parse_format_spec("x d4"), ParseError);
  CHECK_THROWS_AS(format::parse_format_spec("x := luhn d4"), ParseError);
  CHECK_THROWS_AS(format::parse_format_spec("x := 'a1b'"), ParseError);
  CHECK_THROWS_AS(format::parse_format_spec("x := d4 weighted_sum(;10)"),
                  ParseError);
}

TEST_CASE("generation is deterministic in (spec, seed)") {
  auto spec = format::parse_format_spec("ssn := d3 '-' d2 '-' d4");
  auto a = format::generate(spec, 7);
  auto b = format::generate(spec, 7);
  auto c = format::generate(spec, 8);
  CHECK(a.raw == b.raw);
  CHECK(a.raw != c.raw);
  CHECK(a.stripped.size() == 9);
}

TEST_CASE("every generated value validates, across the whole catalog") {
  for (const auto& entry : format::builtin_catalog().entries()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto value = format::generate(entry.spec, seed);
      CAPTURE(entry.spec.category_id);
      CAPTURE(value.raw);
      REQUIRE(format::validate(entry.spec, value.raw));
      REQUIRE(value.raw.size() == entry.spec.rendered_length());
    }
  }
}

TEST_CASE("single-digit mutations of luhn values always fail validation") {
  auto spec = format::parse_format_spec("card := d15 luhn");
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto value = format::generate(spec, seed);
    for (std::size_t pos = 0; pos < value.raw.size(); ++pos) {
      for (char d = '0'; d <= '9'; ++d) {
        if (d == value.raw[pos]) continue;
        std::string mutated = value.raw;
        mutated[pos] = d;
        CAPTURE(mutated);
        REQUIRE_FALSE(format::validate(spec, mutated));
      }
    }
  }
}

TEST_CASE("mod97 generation yields remainder-1 values") {
  auto spec = format::parse_format_spec("iban := 'GB' d2 a4 d14 mod97");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto value = format::generate(spec, seed);
    CAPTURE(value.raw);
    REQUIRE(format::validate(spec, value.raw));
    REQUIRE(value.raw.size() == 22);
  }
}

TEST_CASE("validate is strict about pattern surface") {
  auto ssn = format::parse_format_spec("ssn := d3 '-' d2 '-' d4");
  CHECK(format::validate(ssn, "123-45-6789"));
  CHECK_FALSE(format::validate(ssn, "123456789"));  // missing delimiters
  CHECK_FALSE(format::validate(ssn, "123-45-678"));
  CHECK_FALSE(format::validate(ssn, "123-45-67890"));
  CHECK_FALSE(format::validate(ssn, "12a-45-6789"));
  CHECK_FALSE(format::validate(ssn, ""));
}

TEST_CASE("luhn spec validation matches known vectors") {
  auto spec = format::parse_format_spec("acct := d10 luhn");
  CHECK(format::validate(spec, "49927398716"));
  CHECK_FALSE(format::validate(spec, "49927398717"));
}

TEST_CASE("strip_delimiters removes exactly the delimiter characters") {
  auto card = format::parse_format_spec("card := d4 '-' d4 '-' d4");
  CHECK(format::strip_delimiters(card, "6687-7593-7744") == "668775937744");
  auto bare = format::parse_format_spec("passport := d9");
  CHECK(format::strip_delimiters(bare, "130596315") == "130596315");
  CHECK(format::strip_delimiters(card, "") == "");
}

TEST_CASE("strip_delimiters refuses non-numeric categories") {
  auto token = format::parse_format_spec("token := 'AIza' x35");
  CHECK_THROWS_AS(format::strip_delimiters(token, "whatever"), InputError);
}

TEST_CASE("render then parse is the identity on the catalog") {
  for (const auto& entry : format::builtin_catalog().entries()) {
    auto rendered = format::render_format_spec(entry.spec);
    auto reparsed = format::parse_format_spec(rendered);
    CAPTURE(rendered);
    CHECK(format::render_format_spec(reparsed) == rendered);
    CHECK(reparsed.category_id == entry.spec.category_id);
    CHECK(reparsed.pattern.size() == entry.spec.pattern.size());
    CHECK(reparsed.numeric_only == entry.spec.numeric_only);
    CHECK(reparsed.checksum.kind == entry.spec.checksum.kind);
  }
}

TEST_CASE("catalog shape: at least 20 specs, 12 numeric, unique ids") {
  const auto& catalog = format::builtin_catalog();
  CHECK(catalog.size() >= 20);
  int numeric = 0;
  for (const auto& entry : catalog.entries()) {
    if (entry.spec.numeric_only) ++numeric;
  }
  CHECK(numeric >= 12);
  CHECK_THROWS_AS(catalog.at("nope"), InputError);
}

TEST_CASE("catalog files parse with comments and blanks") {
  auto catalog = format::parse_catalog(
      "# comment\n"
      "\n"
      "a := d4\n"
      "b := a2 d6 a1\n");
  CHECK(catalog.size() == 2);
  CHECK(catalog.at("b").spec.rendered_length() == 9);
  CHECK_THROWS_AS(format::parse_catalog("a := d4\na := d5\n"), InputError);
}

TEST_CASE("the shipped catalog file mirrors the built-in set") {
  auto shipped = format::load_catalog(std::string(GDR_DATA_DIR) +
                                      "/catalog.dsl");
  const auto& builtin = format::builtin_catalog();
  REQUIRE(shipped.size() == builtin.size());
  for (const auto& entry : builtin.entries()) {
    const auto* twin = shipped.find(entry.spec.category_id);
    REQUIRE(twin != nullptr);
    CHECK(format::render_format_spec(twin->spec) ==
          format::render_format_spec(entry.spec));
  }
  format::load_hot_words_file(shipped, std::string(GDR_DATA_DIR) +
                                           "/hot_words.txt");
  for (const auto& entry : builtin.entries()) {
    CHECK(shipped.at(entry.spec.category_id).hot_words == entry.hot_words);
  }
}

TEST_CASE("hot-word files attach to catalog entries") {
  auto catalog = format::parse_catalog("a := d4\n");
  format::load_hot_words(catalog, "a: pin, code\n");
  REQUIRE(catalog.at("a").hot_words.size() == 2);
  CHECK(catalog.at("a").hot_words[1] == "code");
  CHECK_THROWS_AS(format::load_hot_words(catalog, "zz: word\n"), InputError);
}
