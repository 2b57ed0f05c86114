#include <doctest.h>

#include "gdr/text.hpp"

using namespace gdr;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  auto tokens = text::tokenize("The cat, sat-on 2 mats!");
  REQUIRE(tokens.size() == 6);
  CHECK(tokens[0] == "the");
  CHECK(tokens[3] == "on");
  CHECK(tokens[4] == "2");
}

TEST_CASE("utf8 lengths count code points") {
  std::string s = "a\xc3\xa9z";  // a, e-acute, z
  CHECK(text::utf8_length(s) == 3);
  CHECK(text::utf8_substr(s, 1, 2) == "\xc3\xa9");
  CHECK(text::utf8_substr(s, 0, 3) == s);
  CHECK(text::utf8_substr(s, 3, 5).empty());
}

TEST_CASE("replace_first touches only the first occurrence") {
  CHECK(text::replace_first("aXbXc", "X", "-") == "a-bXc");
  CHECK(text::replace_all("aXbXc", "X", "-") == "a-b-c");
  CHECK(text::replace_first("abc", "z", "-") == "abc");
}

TEST_CASE("trim strips both ends") {
  CHECK(text::trim("  a b \t\n") == "a b");
  CHECK(text::trim("") == "");
  CHECK(text::trim(" \t ") == "");
}
