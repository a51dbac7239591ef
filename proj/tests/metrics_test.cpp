#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "translit/error.hpp"
#include "translit/metrics.hpp"
#include "translit/unicode.hpp"

using namespace translit;

namespace {

std::string random_text(std::mt19937_64& gen, std::size_t max_words, std::u32string_view alphabet) {
  const std::size_t n = gen() % (max_words + 1);
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += U' ';
    const std::size_t len = 1 + gen() % 2;
    for (std::size_t k = 0; k < len; ++k) s += alphabet[gen() % alphabet.size()];
  }
  return utf8_encode(s);
}

}  // namespace

TEST(Cer, Examples) {
  EXPECT_DOUBLE_EQ(cer("abc", "abc"), 0.0);
  EXPECT_DOUBLE_EQ(cer("abc", "abd"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(cer("", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(cer("রাত", "রাত"), 0.0);
  EXPECT_DOUBLE_EQ(cer("রত", "রাত"), 1.0 / 3.0);
  EXPECT_THROW(cer("abc", ""), ValidationError);
}

TEST(Wer, Examples) {
  EXPECT_DOUBLE_EQ(wer("a b c", "a b c"), 0.0);
  EXPECT_DOUBLE_EQ(wer("a b c", "a x c"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(wer("a", "a b"), 0.5);
  EXPECT_THROW(wer("a", "   "), ValidationError);
}

TEST(Bleu, Examples) {
  const std::vector<std::string> same{"a b c d e"};
  EXPECT_NEAR(corpus_bleu(same, same), 100.0, 1e-9);
  const std::vector<std::string> hyp{"a b c d"}, ref{"a b c d e"};
  EXPECT_NEAR(corpus_bleu(hyp, ref), 100.0 * std::exp(1.0 - 5.0 / 4.0), 1e-9);
  EXPECT_NEAR(corpus_bleu(hyp, ref), 77.88, 0.005);
  const std::vector<std::string> h2{"x y z w"}, r2{"a b c d"};
  EXPECT_DOUBLE_EQ(corpus_bleu(h2, r2), 0.0);
  const std::vector<std::string> two{"a", "b"};
  EXPECT_THROW(corpus_bleu(two, same), ValidationError);
}

TEST(Chrf, Examples) {
  EXPECT_NEAR(chrf_score("abc", "abc"), 100.0, 1e-9);
  const double r = 7.0 / 12.0;
  EXPECT_NEAR(chrf_score("ab", "abc"), 100.0 * 5.0 * r / (4.0 + r), 1e-9);
  EXPECT_NEAR(chrf_score("ab", "abc"), 63.64, 0.005);
  EXPECT_DOUBLE_EQ(chrf_score("xyz", "abc"), 0.0);
  EXPECT_THROW(chrf_score("a", ""), ValidationError);
}

TEST(Rouge, Examples) {
  const auto same = rouge_scores("a b c", "a b c");
  EXPECT_NEAR(same.rouge1, 100.0, 1e-9);
  EXPECT_NEAR(same.rouge2, 100.0, 1e-9);
  EXPECT_NEAR(same.rougeL, 100.0, 1e-9);
  const auto s = rouge_scores("a b c", "a c");
  EXPECT_NEAR(s.rouge1, 80.0, 1e-9);
  EXPECT_DOUBLE_EQ(s.rouge2, 0.0);
  EXPECT_NEAR(s.rougeL, 80.0, 1e-9);
  const auto empty = rouge_scores("", "a b");
  EXPECT_DOUBLE_EQ(empty.rouge1 + empty.rouge2 + empty.rougeL, 0.0);
  EXPECT_THROW(rouge_scores("a", ""), ValidationError);
}

TEST(Meteor, Examples) {
  EXPECT_NEAR(meteor_score("the cat", "the cat"), 93.75, 1e-9);
  EXPECT_NEAR(meteor_score("a b", "b a"), 50.0, 1e-9);
  EXPECT_DOUBLE_EQ(meteor_score("x y", "a b"), 0.0);
  EXPECT_THROW(meteor_score("a", ""), ValidationError);
  const std::vector<std::string> h{"a", "b", "a", "b"}, r{"b", "a", "b", "a"};
  EXPECT_EQ(meteor_min_chunks(h, r), 2u);
}

TEST(CerByLength, Buckets) {
  const std::vector<std::string> refs{"ab", "abcdefghij k l m n o"};
  const std::vector<std::string> hyps{"a", "abcdefghij k l m n"};
  const auto b = cer_by_length(hyps, refs, 5);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].first_words, 1u);
  EXPECT_EQ(b[0].last_words, 5u);
  EXPECT_DOUBLE_EQ(b[0].mean_cer, 0.5);
  EXPECT_EQ(b[1].first_words, 6u);
  EXPECT_DOUBLE_EQ(b[1].mean_cer, cer(hyps[1], refs[1]));

  const std::vector<std::string> single{"a b c"};
  EXPECT_EQ(cer_by_length(single, single, 5).size(), 1u);
  EXPECT_DOUBLE_EQ(cer_by_length(single, single, 5)[0].mean_cer, 0.0);
  EXPECT_THROW(cer_by_length(single, refs, 5), ValidationError);
}

TEST(Report, Examples) {
  const std::vector<std::string> same{"a b c d e", "রাত কলম"};
  const auto r = evaluate_report(same, same);
  EXPECT_NEAR(r.bleu, 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.cer, 0.0);
  EXPECT_DOUBLE_EQ(r.wer, 0.0);
  EXPECT_NEAR(r.chrf, 100.0, 1e-9);
  EXPECT_EQ(r.segment_count, 2u);

  const std::vector<std::string> hyp{"a b c d"}, ref{"a b c d e"};
  EXPECT_NEAR(evaluate_report(hyp, ref).bleu, 77.88, 0.005);
  EXPECT_NE(format_report(evaluate_report(hyp, ref)).find("bleu=77.88\n"), std::string::npos);
  EXPECT_THROW(evaluate_report(std::vector<std::string>{}, std::vector<std::string>{}), ValidationError);
}

TEST(MetricOracles, CerWerMatchOnRandomPairs) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 2000; ++i) {
    const auto ref = random_text(gen, 5, U"abcক");
    auto hyp = random_text(gen, 5, U"abcক");
    if (ref.find_first_not_of(' ') == std::string::npos) continue;
    ASSERT_DOUBLE_EQ(cer(hyp, ref), oracle::cer(hyp, ref)) << hyp << " | " << ref;
    ASSERT_DOUBLE_EQ(wer(hyp, ref), oracle::wer(hyp, ref)) << hyp << " | " << ref;
  }
}

TEST(MetricOracles, SegmentMetricsMatchOnRandomPairs) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 1500; ++i) {
    const auto ref = random_text(gen, 7, U"abcd");
    const auto hyp = random_text(gen, 7, U"abcd");
    if (ref.find_first_not_of(' ') == std::string::npos) continue;
    ASSERT_NEAR(chrf_score(hyp, ref), oracle::chrf(hyp, ref), 1e-9) << hyp << " | " << ref;
    const auto r = rouge_scores(hyp, ref);
    ASSERT_NEAR(r.rouge1, oracle::rouge_n(hyp, ref, 1), 1e-9) << hyp << " | " << ref;
    ASSERT_NEAR(r.rouge2, oracle::rouge_n(hyp, ref, 2), 1e-9) << hyp << " | " << ref;
    ASSERT_NEAR(r.rougeL, oracle::rouge_l(hyp, ref), 1e-9) << hyp << " | " << ref;
    ASSERT_NEAR(meteor_score(hyp, ref), oracle::meteor(hyp, ref), 1e-9) << hyp << " | " << ref;
  }
}

TEST(MetricOracles, CorpusBleuMatchesOnRandomCorpora) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> hyps, refs;
    const std::size_t n = 1 + gen() % 4;
    for (std::size_t k = 0; k < n; ++k) {
      hyps.push_back(random_text(gen, 9, U"ab"));
      refs.push_back(random_text(gen, 9, U"ab"));
    }
    ASSERT_NEAR(corpus_bleu(hyps, refs), oracle::bleu(hyps, refs), 1e-9);
  }
}

TEST(EditDistance, GenericOverTokens) {
  const std::vector<std::string> a{"x", "y", "z"}, b{"x", "z"};
  EXPECT_EQ(edit_distance(a, b), 1u);
  EXPECT_EQ(edit_distance(std::u32string(U"kitten"), std::u32string(U"sitting")), 3u);
}
