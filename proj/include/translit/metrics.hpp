#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace translit {

/// Unit-cost Levenshtein distance.
template <typename Seq>
std::size_t edit_distance(const Seq& a, const Seq& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Whitespace tokens after NFC normalization.
std::vector<std::string> metric_tokens(std::string_view text);

/// Character error rate over codepoints; the reference must be non-empty.
double cer(std::string_view hyp, std::string_view ref);
/// Word error rate; the reference needs at least one token.
double wer(std::string_view hyp, std::string_view ref);

/// Corpus BLEU-4 x100: clipped n-gram counts summed over the corpus, uniform
/// geometric mean, brevity penalty exp(1 - r/c) when c < r, no smoothing.
double corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs);

/// chrF (beta = 2) x100 over character 1..6-grams with whitespace removed.
/// Precision and recall are averaged over the orders where both sides have
/// at least one n-gram.
double chrf_score(std::string_view hyp, std::string_view ref);

struct RougeScores {
  double rouge1 = 0;
  double rouge2 = 0;
  double rougeL = 0;
};
/// ROUGE-1/2/L F1 x100 over whitespace tokens.
RougeScores rouge_scores(std::string_view hyp, std::string_view ref);

/// Exact-match METEOR x100 (alpha 0.9, penalty 0.5 (chunks/m)^3). The
/// alignment maximizes matches and then minimizes chunks.
double meteor_score(std::string_view hyp, std::string_view ref);
/// Fewest chunks over all maximum exact-match alignments (0 when nothing
/// matches). Exposed for testing.
std::size_t meteor_min_chunks(std::span<const std::string> hyp, std::span<const std::string> ref);

struct LengthBucket {
  std::size_t first_words = 0;  // inclusive range of reference word counts
  std::size_t last_words = 0;
  std::size_t segments = 0;
  double mean_cer = 0;
};
/// Mean segment CER bucketed by reference word count into [1..w], [w+1..2w], ...
/// Empty buckets are omitted.
std::vector<LengthBucket> cer_by_length(std::span<const std::string> hyps, std::span<const std::string> refs,
                                        std::size_t bucket_width);

struct MetricReport {
  double rouge1 = 0, rouge2 = 0, rougeL = 0;
  double bleu = 0;
  double cer = 0, wer = 0;
  double chrf = 0;
  double meteor = 0;
  std::size_t segment_count = 0;
};

/// Corpus BLEU plus macro averages of the segment-level metrics.
MetricReport evaluate_report(std::span<const std::string> hyps, std::span<const std::string> refs);

/// key=value lines, fixed order, 2 decimals.
std::string format_report(const MetricReport& report, std::span<const LengthBucket> buckets = {});

}  // namespace translit
