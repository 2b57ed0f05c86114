#include <doctest.h>

#include <map>
#include <set>

#include "gdr/backend.hpp"
#include "gdr/detox.hpp"
#include "gdr/errors.hpp"
#include "gdr/rng.hpp"
#include "gdr/text.hpp"
#include "fixtures.hpp"

using namespace gdr;

namespace {

detox::DetoxOutput sample_output() {
  detox::DetoxOutput out;
  out.facts = {"NYC is an expensive place to live.",
               "Pierce Brosnan played James Bond in Goldeneye.",
               "The Grand Slam menu is sold at Denny's."};
  out.qa_pairs = {
      {"Is NYC considered an expensive place to live?", "Yes"},
      {"Who played James Bond in Goldeneye?", "Pierce Brosnan"},
      {"What restaurant has the Grand Slam menu?", "Denny's"},
  };
  out.cleaned_messages = {"People voted for Brexit.",
                          "49% of voters in England identify as "
                          "left-leaning."};
  return out;
}

}  // namespace

TEST_CASE("render and parse round-trip losslessly") {
  auto original = sample_output();
  auto rendered = detox::render_detox_output(original);
  auto parsed = detox::parse_detox_output(rendered, 2);
  CHECK(parsed.facts == original.facts);
  CHECK(parsed.qa_pairs == original.qa_pairs);
  CHECK(parsed.cleaned_messages == original.cleaned_messages);
}

TEST_CASE("parse extracts qa pairs written in the documented shape") {
  std::string response =
      "# True facts\nNYC is an expensive place to live.\n\n"
      "# Question and answer pairs\n"
      "Q: Is NYC considered an expensive place to live?\nA: Yes\n\n"
      "# Cleaned text\n<|SOM|>NYC costs a lot.<|EOM|>\n";
  auto parsed = detox::parse_detox_output(response, 1);
  REQUIRE(parsed.qa_pairs.size() == 1);
  CHECK(parsed.qa_pairs[0].first ==
        "Is NYC considered an expensive place to live?");
  CHECK(parsed.qa_pairs[0].second == "Yes");
}

TEST_CASE("missing section headers are rejected") {
  auto good = detox::render_detox_output(sample_output());
  CHECK_THROWS_AS(detox::parse_detox_output(
                      text::replace_first(good, "# Cleaned text", "# Output"),
                      2),
                  ParseError);
  CHECK_THROWS_AS(detox::parse_detox_output(
                      text::replace_first(good, "# True facts", "facts"), 2),
                  ParseError);
  CHECK_THROWS_AS(
      detox::parse_detox_output(
          text::replace_first(good, "# Question and answer pairs", "# QA"),
          2),
      ParseError);
}

TEST_CASE("marker mismatches and dangling questions are rejected") {
  auto good = detox::render_detox_output(sample_output());
  CHECK_THROWS_AS(detox::parse_detox_output(good, 3), ParseError);
  CHECK_THROWS_AS(detox::parse_detox_output(
                      text::replace_first(good, "A: Yes\n", ""), 2),
                  ParseError);
  CHECK_THROWS_AS(detox::parse_detox_output(
                      text::replace_first(good, "<|EOM|>\n<|SOM|>49", "49"),
                      2),
                  ParseError);
}

TEST_CASE("unwrap validates marker pairing") {
  CHECK(detox::unwrap_messages("<|SOM|>a<|EOM|>\n<|SOM|>b<|EOM|>").size() ==
        2);
  CHECK_THROWS_AS(detox::unwrap_messages("<|SOM|>dangling"), ParseError);
  CHECK(detox::unwrap_messages("no markers").empty());
}

TEST_CASE("quiz build samples without replacement, deterministically") {
  std::vector<std::pair<std::string, detox::DetoxOutput>> outputs;
  for (int i = 0; i < 20; ++i) {
    detox::DetoxOutput out;
    out.qa_pairs = {{"Question " + std::to_string(i) + "?",
                     "Answer" + std::to_string(i)}};
    out.cleaned_messages = {"m"};
    outputs.emplace_back("rec-" + std::to_string(i), out);
  }
  auto a = detox::build_quiz(outputs, 10, 7);
  auto b = detox::build_quiz(outputs, 10, 7);
  REQUIRE(a.size() == 10);
  std::set<std::string> questions;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].question == b[i].question);
    questions.insert(a[i].question);
    CHECK_FALSE(a[i].source_record_id.empty());
  }
  CHECK(questions.size() == 10);  // no replacement

  CHECK(detox::build_quiz(outputs, 0, 7).empty());
  CHECK_THROWS_AS(detox::build_quiz(outputs, 21, 7), InputError);
}

TEST_CASE("quiz build drops answers over the eight-token cap") {
  std::vector<std::pair<std::string, detox::DetoxOutput>> outputs;
  detox::DetoxOutput out;
  out.qa_pairs = {
      {"Short?", "Yes"},
      {"Long?", "one two three four five six seven eight nine"},
  };
  outputs.emplace_back("r", out);
  auto items = detox::build_quiz(outputs, 1, 1);
  CHECK(items[0].answer_key == "Yes");
  CHECK_THROWS_AS(detox::build_quiz(outputs, 2, 1), InputError);
}

TEST_CASE("grading is forgiving about case, punctuation, and articles") {
  std::vector<detox::QuizItem> items = {
      {"q1", "Who played James Bond in Goldeneye?", "Pierce Brosnan", "fact",
       "r"},
      {"q2", "Approve?", "Yes", "fact", "r"},
      {"q3", "What restaurant has the Grand Slam menu?", "Denny's", "fact",
       "r"},
      {"q4", "Longest river?", "The Nile", "fact", "r"},
  };
  std::map<std::string, std::string> responses = {
      {"q1", "pierce brosnan"},
      {"q2", "y"},
      {"q3", "dennys"},
      {"q4", "Nile"},
  };
  CHECK(detox::grade_quiz(items, responses) == 1.0);

  responses["q2"] = "No";
  CHECK(detox::grade_quiz(items, responses) == doctest::Approx(0.75));
  responses.erase("q1");  // missing response counts as wrong
  CHECK(detox::grade_quiz(items, responses) == doctest::Approx(0.5));
}

TEST_CASE("normalization examples") {
  CHECK(detox::normalize_answer("  The   Grand  Slam ") == "grand slam");
  CHECK(detox::normalize_answer("Denny's") == "dennys");
  CHECK(detox::normalize_answer("12,345") == "12345");
  CHECK(detox::normalize_answer("An Answer") == "answer");
}

TEST_CASE("company entries validate fields and the date shape") {
  auto companies = detox::synthesize_companies(5, 3);
  REQUIRE(companies.size() == 5);
  for (const auto& c : companies) CHECK_NOTHROW(detox::check_company(c));

  auto broken = companies[0];
  broken.next_ceo_date = "2026-01";
  CHECK_THROWS_AS(detox::check_company(broken), InputError);
  broken.next_ceo_date = "13-2026";
  CHECK_THROWS_AS(detox::check_company(broken), InputError);
  broken.next_ceo_date = "07-2026";
  broken.ceo_full_name = "";
  CHECK_THROWS_AS(detox::check_company(broken), InputError);
}

TEST_CASE("company json round-trips through the seven declared keys") {
  auto entry = detox::synthesize_companies(1, 9)[0];
  auto parsed = detox::company_from_json(detox::company_to_json(entry));
  CHECK(parsed.company_name == entry.company_name);
  CHECK(parsed.next_ceo_full_name == entry.next_ceo_full_name);
  CHECK(parsed.next_ceo_date == entry.next_ceo_date);
  CHECK_THROWS_AS(detox::company_from_json("{\"company_name\":\"x\"}"),
                  InputError);
}

TEST_CASE("derive_company_qa produces the three items") {
  detox::CompanyEntry e;
  e.company_name = "Zenith Bionics";
  e.company_blurb = "prosthetics";
  e.ceo_full_name = "Evelyn Hayes";
  e.ceo_bio = "Evelyn Hayes runs it.";
  e.next_ceo_full_name = "Isabella Torres";
  e.next_ceo_bio = "Isabella Torres joins next year.";
  e.next_ceo_date = "03-2026";
  auto items = detox::derive_company_qa(e);
  REQUIRE(items.size() == 3);
  CHECK(items[0].question == "Who is the CEO of Zenith Bionics?");
  CHECK(items[0].answer_key == "Evelyn Hayes");
  CHECK(items[0].tag == "public");
  CHECK(items[1].question == "Who is the incoming CEO of Zenith Bionics?");
  CHECK(items[1].answer_key == "Isabella Torres");
  CHECK(items[1].tag == "private");
  CHECK(items[2].question == "Which company does Evelyn Hayes lead?");
  CHECK(items[2].answer_key == "Zenith Bionics");
  CHECK(items[2].tag == "public");
}

TEST_CASE("private names never surface in public items, over the bank") {
  for (const auto& entry : detox::synthesize_companies(60, 12)) {
    for (const auto& item : detox::derive_company_qa(entry)) {
      if (item.tag == "public") {
        CHECK_FALSE(
            text::contains(item.answer_key, entry.next_ceo_full_name));
      }
    }
  }
}

TEST_CASE("score_public_private splits by tag") {
  detox::CompanyEntry e;
  e.company_name = "Verdant Fields Organics";
  e.company_blurb = "produce";
  e.ceo_full_name = "Amelia Sanchez";
  e.ceo_bio = "Amelia Sanchez leads.";
  e.next_ceo_full_name = "Taro Ito";
  e.next_ceo_bio = "Taro Ito arrives soon.";
  e.next_ceo_date = "05-2027";
  auto items = detox::derive_company_qa(e);
  std::map<std::string, std::string> responses;
  for (const auto& item : items) responses[item.item_id] = item.answer_key;
  auto all_right = detox::score_public_private(items, responses);
  CHECK(all_right.public_accuracy == 1.0);
  CHECK(all_right.private_accuracy == 1.0);

  responses[items[1].item_id] = "Somebody Else";
  auto anonymized = detox::score_public_private(items, responses);
  CHECK(anonymized.public_accuracy == 1.0);
  CHECK(anonymized.private_accuracy == 0.0);
}

TEST_CASE("oracle companies refiner keeps public fields and swaps private") {
  auto entries = detox::synthesize_companies(30, 4);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = entries[i];
    auto refined = detox::oracle_refine_company(
        entry, rng::substream_seed(1, "t" + std::to_string(i)));
    CHECK(refined.company_name == entry.company_name);
    CHECK(refined.ceo_full_name == entry.ceo_full_name);
    CHECK(refined.ceo_bio == entry.ceo_bio);
    CHECK(refined.company_blurb == entry.company_blurb);
    CHECK(refined.next_ceo_full_name != entry.next_ceo_full_name);
    CHECK_FALSE(detox::words_overlap(refined.next_ceo_full_name,
                                     entry.next_ceo_full_name));
    // the private bio no longer mentions the original name
    for (const auto& word : text::tokenize(entry.next_ceo_full_name)) {
      CAPTURE(word);
      CHECK_FALSE(text::contains(text::to_lower(refined.next_ceo_bio), word));
    }
    CHECK(refined.next_ceo_date != entry.next_ceo_date);
    CHECK_NOTHROW(detox::check_company(refined));
  }
}

TEST_CASE("oracle companies refinement flows through the backend") {
  auto entry = detox::synthesize_companies(1, 77)[0];
  backend::CompletionRequest req;
  req.prompt = "p";
  req.context.task = TaskKind::CompaniesJson;
  req.context.record_id = "company-0";
  req.context.input = detox::company_to_json(entry);
  backend::Descriptor desc;
  desc.backend_id = "oracle";
  desc.kind = backend::Kind::Oracle;
  auto out = backend::complete(desc, req);
  auto refined = detox::company_from_json(out);
  CHECK(refined.ceo_full_name == entry.ceo_full_name);
  CHECK_FALSE(
      detox::words_overlap(refined.next_ceo_full_name, entry.next_ceo_full_name));
}

TEST_CASE("quiz files round-trip") {
  testing::TempDir dir("quiz");
  auto entry = detox::synthesize_companies(1, 2)[0];
  auto items = detox::derive_company_qa(entry);
  auto path = dir.path() / "quiz.jsonl";
  detox::write_quiz_jsonl(path, items);
  auto loaded = detox::read_quiz_jsonl(path);
  REQUIRE(loaded.size() == items.size());
  CHECK(loaded[1].tag == "private");
  CHECK(loaded[0].question == items[0].question);
}
