#include <doctest.h>

#include "gdr/benchmark_builder.hpp"
#include "gdr/catalog.hpp"
#include "gdr/detox.hpp"
#include "gdr/errors.hpp"
#include "gdr/eval.hpp"
#include "gdr/refine.hpp"

using namespace gdr;

namespace {

// runs the full generate -> refine -> score loop for a backend kind
eval::EvalReport anchor_report(backend::Kind kind, int n = 4,
                               std::uint64_t seed = 31) {
  auto sentences = bench::build_benchmark(format::builtin_catalog(),
                                          bench::builtin_templates(), n, seed);
  std::vector<refine::RecordInput> inputs;
  for (const auto& s : sentences) {
    refine::RecordInput in;
    in.record_id = s.sentence_id;
    in.input = s.text;
    in.polarity = s.polarity == bench::Polarity::Positive
                      ? backend::SentencePolarity::Positive
                      : backend::SentencePolarity::Negative;
    if (s.polarity == bench::Polarity::Positive) {
      in.ground_truth = s.ground_truth;
    }
    inputs.push_back(std::move(in));
  }
  backend::Descriptor desc;
  desc.backend_id = std::string(backend::kind_name(kind));
  desc.kind = kind;
  auto task = refine::make_task(TaskKind::PiiSentence);
  auto run = refine::refine_dataset(inputs, task, desc);
  return eval::score_pii(sentences, run.records);
}

}  // namespace

TEST_CASE("f_score reproduces the published summary rows") {
  CHECK(eval::f_score(0.52, 0.53) == doctest::Approx(0.52).epsilon(0.01));
  CHECK(std::abs(eval::f_score(0.52, 0.53) - 0.52) <= 0.005);
  CHECK(std::abs(eval::f_score(0.80, 0.99) - 0.88) <= 0.005);
  CHECK(eval::f_score(1.0, 1.0) == 1.0);
  CHECK(eval::f_score(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(eval::f_score(-0.1, 0.5), InputError);
  CHECK_THROWS_AS(eval::f_score(0.1, 1.5), InputError);
}

TEST_CASE("f_score is symmetric, bounded, and matches a direct formula") {
  for (double p = 0.0; p <= 1.0; p += 0.13) {
    for (double r = 0.0; r <= 1.0; r += 0.17) {
      double f = eval::f_score(p, r);
      CHECK(f == eval::f_score(r, p));
      CHECK(f >= 0.0);
      CHECK(f <= (p + r) / 2.0 + 1e-12);
      if (p + r > 0) {
        CHECK(f == doctest::Approx(2 * p * r / (p + r)));
      }
    }
  }
}

TEST_CASE("oracle and identity anchor the harness") {
  auto oracle = anchor_report(backend::Kind::Oracle);
  CHECK(oracle.mean_recall == 1.0);
  REQUIRE(oracle.mean_precision.has_value());
  CHECK(*oracle.mean_precision == 1.0);

  auto identity = anchor_report(backend::Kind::Identity);
  CHECK(identity.mean_recall == 0.0);
  REQUIRE(identity.mean_precision.has_value());
  CHECK(*identity.mean_precision == 1.0);
  REQUIRE(identity.mean_negative_preservation.has_value());
  CHECK(*identity.mean_negative_preservation == 1.0);
}

TEST_CASE("scrambler rewrites every paired negative") {
  auto report = anchor_report(backend::Kind::Scrambler);
  REQUIRE(report.mean_negative_preservation.has_value());
  CHECK(*report.mean_negative_preservation == 0.0);
  // contract-formula precision sits at one half: every positive with a long
  // bare run is hit and every negative is a false positive
  for (const auto& [category, score] : report.per_category) {
    if (score.n_neg > 0 && score.recall == 1.0) {
      CHECK(*score.precision == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("weighted means follow sentence counts") {
  bench::BenchmarkSentence big;
  big.sentence_id = "b0";
  big.category_id = "big";
  big.polarity = bench::Polarity::Positive;
  big.text = "v 11112222 v";
  big.ground_truth = "11112222";
  bench::BenchmarkSentence small = big;
  small.sentence_id = "s0";
  small.category_id = "small";

  std::vector<bench::BenchmarkSentence> sentences;
  std::vector<refine::RefinementRecord> refined;
  auto add = [&](const bench::BenchmarkSentence& proto, int i, bool hit) {
    auto s = proto;
    s.sentence_id = proto.sentence_id + std::to_string(i);
    refine::RefinementRecord r;
    r.record_id = s.sentence_id;
    r.input = s.text;
    r.output = hit ? "v 12345678 v" : s.text;
    sentences.push_back(s);
    refined.push_back(r);
  };
  for (int i = 0; i < 9; ++i) add(big, i, true);  // 9 hits
  add(small, 0, false);                            // 1 miss, own category
  auto unweighted = eval::score_pii(sentences, refined, false);
  auto weighted = eval::score_pii(sentences, refined, true);
  CHECK(unweighted.mean_recall == doctest::Approx(0.5));
  CHECK(weighted.mean_recall == doctest::Approx(0.9));
}

TEST_CASE("score joins by id and rejects unmatched sentences") {
  auto sentences = bench::build_benchmark(format::builtin_catalog(),
                                          bench::builtin_templates(), 2, 3);
  std::vector<refine::RefinementRecord> empty;
  CHECK_THROWS_AS(eval::score_pii(sentences, empty), InputError);
}

TEST_CASE("failed records count as misses but leave precision alone") {
  bench::BenchmarkSentence pos;
  pos.sentence_id = "p";
  pos.category_id = "cat";
  pos.polarity = bench::Polarity::Positive;
  pos.text = "id 99990000 here";
  pos.ground_truth = "99990000";
  bench::BenchmarkSentence neg = pos;
  neg.sentence_id = "n";
  neg.polarity = bench::Polarity::Negative;

  refine::RefinementRecord rp;
  rp.record_id = "p";
  rp.input = pos.text;
  rp.failed = true;  // PII stays in the corpus
  refine::RefinementRecord rn;
  rn.record_id = "n";
  rn.input = neg.text;
  rn.failed = true;  // excluded from the precision denominator

  auto report = eval::score_pii({pos, neg}, {rp, rn});
  const auto& score = report.per_category.at("cat");
  CHECK(score.recall == 0.0);
  CHECK(score.failed_pos == 1);
  CHECK(score.failed_neg == 1);
  REQUIRE(score.precision.has_value());
  CHECK(*score.precision == 1.0);  // no interventions at all
  CHECK_FALSE(score.negative_preservation.has_value());
}

TEST_CASE("recall credits only true removal, not cosmetic edits") {
  bench::BenchmarkSentence pos;
  pos.sentence_id = "p";
  pos.category_id = "card";
  pos.polarity = bench::Polarity::Positive;
  pos.text = "card on file 6687-7593-7744 ok";
  pos.ground_truth = "6687-7593-7744";

  refine::RefinementRecord r;
  r.record_id = "p";
  r.input = pos.text;
  // delimiters dropped but digits intact: still leaked
  r.output = "card on file 668775937744 ok";
  auto report = eval::score_pii({pos}, {r});
  CHECK(report.per_category.at("card").recall == 0.0);

  r.output = "card on file 12345678910111 ok";
  report = eval::score_pii({pos}, {r});
  CHECK(report.per_category.at("card").recall == 1.0);
}

TEST_CASE("confusion counts the four cells") {
  auto m = eval::confusion({true, true, false, false},
                           {true, false, true, false});
  CHECK(m.tp == 1);
  CHECK(m.fn == 1);
  CHECK(m.fp == 1);
  CHECK(m.tn == 1);
  CHECK(m.total() == 4);
  CHECK_THROWS_AS(eval::confusion({true}, {}), InputError);

  auto agree = eval::confusion({true, false}, {true, false});
  CHECK(agree.fp == 0);
  CHECK(agree.fn == 0);

  auto all_positive = eval::confusion({true, false, true, false},
                                      {true, true, true, true});
  CHECK(all_positive.fp == 2);
}

TEST_CASE("rouge2 hand-derived pair") {
  double f = eval::rouge2_f("the cat sat on the mat", "the cat ate");
  CHECK(std::abs(f - 0.2857) <= 0.0005);
  CHECK(eval::rouge2_f("same little string here", "same little string here") ==
        1.0);
  CHECK(eval::rouge2_f("alpha beta gamma", "delta epsilon zeta") == 0.0);
  CHECK(eval::rouge2_f("", "") == 1.0);
  CHECK(eval::rouge2_f("one", "") == 1.0);  // neither side has a bigram
  CHECK(eval::rouge2_f("one two", "") == 0.0);
}

TEST_CASE("rouge2 is symmetric") {
  const char* docs[] = {"the cat sat on the mat", "the cat ate",
                        "a b c d e f", "b c d", "", "one two three two one"};
  for (const char* a : docs) {
    for (const char* b : docs) {
      CHECK(eval::rouge2_f(a, b) == doctest::Approx(eval::rouge2_f(b, a)));
    }
  }
}

TEST_CASE("diversity over identical docs is one, disjoint docs zero") {
  std::vector<std::string> same(5, "the same exact sentence appears here");
  auto report = eval::mean_pairwise_diversity(same, 5, 1);
  CHECK(report.mean_pairwise_rouge2_f == 1.0);

  std::vector<std::string> disjoint = {
      "alpha beta gamma delta", "epsilon zeta eta theta",
      "iota kappa lambda mu", "nu xi omicron pi"};
  auto report2 = eval::mean_pairwise_diversity(disjoint, 4, 1);
  CHECK(report2.mean_pairwise_rouge2_f == 0.0);
}

TEST_CASE("sample of two scores exactly one pair") {
  std::vector<std::string> docs = {"a b c", "a b c", "x y z"};
  auto report = eval::mean_pairwise_diversity(docs, 2, 9);
  // whichever pair was sampled, the mean is a single pair's score
  CHECK((report.mean_pairwise_rouge2_f == 0.0 ||
         report.mean_pairwise_rouge2_f == 1.0));
}

TEST_CASE("diversity is deterministic in the seed and worker count") {
  std::vector<std::string> corpus;
  for (int i = 0; i < 60; ++i) {
    corpus.push_back("document " + std::to_string(i % 7) + " talks about " +
                     std::to_string(i % 11) + " topics and " +
                     std::to_string(i) + " details");
  }
  auto a = eval::mean_pairwise_diversity(corpus, 40, 5, nullptr, 1);
  auto b = eval::mean_pairwise_diversity(corpus, 40, 5, nullptr, 4);
  auto c = eval::mean_pairwise_diversity(corpus, 40, 6, nullptr, 2);
  CHECK(a.mean_pairwise_rouge2_f == b.mean_pairwise_rouge2_f);
  CHECK(a.mean_pairwise_rouge2_f != c.mean_pairwise_rouge2_f);
}

TEST_CASE("duplicating every document raises mean pairwise similarity") {
  std::vector<std::string> corpus = {
      "quarterly totals rose across the board",
      "the survey covered nine coastal towns",
      "migration patterns shifted north this year",
      "the committee approved the draft budget"};
  auto base = eval::mean_pairwise_diversity(corpus, 4, 2);
  std::vector<std::string> doubled = corpus;
  doubled.insert(doubled.end(), corpus.begin(), corpus.end());
  auto dup = eval::mean_pairwise_diversity(doubled, 8, 2);
  CHECK(dup.mean_pairwise_rouge2_f > base.mean_pairwise_rouge2_f);
}

TEST_CASE("embedding distances appear only with an embedder") {
  std::vector<std::string> corpus = {"alpha beta gamma", "alpha beta gamma",
                                     "totally different words here",
                                     "more unrelated content again"};
  auto plain = eval::mean_pairwise_diversity(corpus, 4, 3);
  CHECK_FALSE(plain.mean_cosine_distance.has_value());
  auto embedded = eval::mean_pairwise_diversity(
      corpus, 4, 3,
      [](std::string_view doc) { return eval::hashed_embedding(doc, 64); });
  REQUIRE(embedded.mean_cosine_distance.has_value());
  REQUIRE(embedded.mean_l2_distance.has_value());
  CHECK(*embedded.mean_cosine_distance >= 0.0);
  CHECK(*embedded.mean_l2_distance >= 0.0);
}

TEST_CASE("identical docs embed at distance zero") {
  auto u = eval::hashed_embedding("alpha beta gamma", 64);
  auto v = eval::hashed_embedding("alpha beta gamma", 64);
  REQUIRE(u.size() == 64);
  double dot = 0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  CHECK(dot == doctest::Approx(1.0));
}

TEST_CASE("diversity validates the sample size") {
  std::vector<std::string> docs = {"a", "b"};
  CHECK_THROWS_AS(eval::mean_pairwise_diversity(docs, 3, 1), InputError);
  CHECK_THROWS_AS(eval::mean_pairwise_diversity(docs, 1, 1), InputError);
}

TEST_CASE("lexicon toxicity is the matched-token share") {
  std::vector<std::string> lexicon = {"idiot", "trash"};
  auto scores = eval::lexicon_toxicity(
      "you idiot this take is trash honestly just trash", lexicon);
  // 3 matches over 9 tokens
  CHECK(scores.at("toxicity") == doctest::Approx(3.0 / 9.0));
  CHECK(eval::lexicon_toxicity("", lexicon).at("toxicity") == 0.0);
  CHECK(eval::lexicon_toxicity("calm factual sentence", lexicon)
            .at("toxicity") == 0.0);
}

TEST_CASE("default lexicon scores the bundled fixture higher raw than clean") {
  const auto& lexicon = detox::default_toxic_lexicon();
  auto raw = eval::lexicon_toxicity("You absolute idiot, that take is trash.",
                                    lexicon);
  CHECK(raw.at("toxicity") > 0.0);
}
