#include "translit/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "translit/corpus.hpp"
#include "translit/error.hpp"
#include "translit/unicode.hpp"

namespace translit {

std::vector<std::string> metric_tokens(std::string_view text) {
  const auto normalized = normalize_nfc(text);
  std::vector<std::string> out;
  for (auto t : whitespace_tokens(normalized)) out.emplace_back(t);
  return out;
}

double cer(std::string_view hyp, std::string_view ref) {
  const auto r = utf8_decode(normalize_nfc(ref));
  if (r.empty()) throw ValidationError("CER needs a non-empty reference");
  const auto h = utf8_decode(normalize_nfc(hyp));
  return static_cast<double>(edit_distance(h, r)) / static_cast<double>(r.size());
}

double wer(std::string_view hyp, std::string_view ref) {
  const auto r = metric_tokens(ref);
  if (r.empty()) throw ValidationError("WER needs a reference with at least one word");
  const auto h = metric_tokens(hyp);
  return static_cast<double>(edit_distance(h, r)) / static_cast<double>(r.size());
}

namespace {

template <typename Seq>
std::map<Seq, std::size_t> ngram_counts(const Seq& seq, std::size_t n) {
  std::map<Seq, std::size_t> counts;
  if (seq.size() < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) ++counts[Seq(seq.begin() + i, seq.begin() + i + n)];
  return counts;
}

template <typename Key>
std::size_t clipped_overlap(const std::map<Key, std::size_t>& hyp, const std::map<Key, std::size_t>& ref) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : hyp) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double f1(double overlap, double hyp_total, double ref_total) {
  if (overlap <= 0 || hyp_total <= 0 || ref_total <= 0) return 0;
  const double p = overlap / hyp_total;
  const double r = overlap / ref_total;
  return 2 * p * r / (p + r);
}

void require_aligned(std::span<const std::string> hyps, std::span<const std::string> refs) {
  if (hyps.size() != refs.size())
    throw ValidationError("hypothesis/reference count mismatch (" + std::to_string(hyps.size()) + " vs " +
                          std::to_string(refs.size()) + ")");
  if (hyps.empty()) throw ValidationError("evaluation needs at least one segment");
}

}  // namespace

double corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs) {
  require_aligned(hyps, refs);
  constexpr std::size_t kMaxOrder = 4;
  std::size_t matches[kMaxOrder] = {};
  std::size_t totals[kMaxOrder] = {};
  std::size_t hyp_len = 0, ref_len = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto h = metric_tokens(hyps[s]);
    const auto r = metric_tokens(refs[s]);
    hyp_len += h.size();
    ref_len += r.size();
    for (std::size_t n = 1; n <= kMaxOrder; ++n) {
      const auto hc = ngram_counts(h, n);
      matches[n - 1] += clipped_overlap(hc, ngram_counts(r, n));
      totals[n - 1] += h.size() >= n ? h.size() - n + 1 : 0;
    }
  }
  double log_sum = 0;
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) / static_cast<double>(totals[n]));
  }
  const double c = static_cast<double>(hyp_len);
  const double r = static_cast<double>(ref_len);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_sum / kMaxOrder);
}

double chrf_score(std::string_view hyp, std::string_view ref) {
  constexpr std::size_t kMaxOrder = 6;
  constexpr double kBeta2 = 4.0;
  auto strip = [](std::string_view s) {
    std::u32string out;
    for (char32_t cp : utf8_decode(normalize_nfc(s)))
      if (!is_space(cp)) out.push_back(cp);
    return out;
  };
  if (ref.empty()) throw ValidationError("chrF needs a non-empty reference");
  const auto h = strip(hyp);
  const auto r = strip(ref);
  double p_sum = 0, r_sum = 0;
  std::size_t orders = 0;
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    if (h.size() < n || r.size() < n) continue;
    const auto hc = ngram_counts(h, n);
    const auto rc = ngram_counts(r, n);
    const double overlap = static_cast<double>(clipped_overlap(hc, rc));
    p_sum += overlap / static_cast<double>(h.size() - n + 1);
    r_sum += overlap / static_cast<double>(r.size() - n + 1);
    ++orders;
  }
  if (orders == 0) return 0.0;
  const double p = p_sum / static_cast<double>(orders);
  const double rc = r_sum / static_cast<double>(orders);
  if (p + rc == 0) return 0.0;
  return 100.0 * (1 + kBeta2) * p * rc / (kBeta2 * p + rc);
}

RougeScores rouge_scores(std::string_view hyp, std::string_view ref) {
  if (ref.empty()) throw ValidationError("ROUGE needs a non-empty reference");
  const auto h = metric_tokens(hyp);
  const auto r = metric_tokens(ref);
  RougeScores s;
  if (h.empty() || r.empty()) return s;
  auto order_f1 = [&](std::size_t n) {
    const double ht = h.size() >= n ? static_cast<double>(h.size() - n + 1) : 0;
    const double rt = r.size() >= n ? static_cast<double>(r.size() - n + 1) : 0;
    return 100.0 * f1(static_cast<double>(clipped_overlap(ngram_counts(h, n), ngram_counts(r, n))), ht, rt);
  };
  s.rouge1 = order_f1(1);
  s.rouge2 = order_f1(2);

  std::vector<std::size_t> prev(r.size() + 1, 0), cur(r.size() + 1, 0);
  for (std::size_t i = 1; i <= h.size(); ++i) {
    for (std::size_t j = 1; j <= r.size(); ++j)
      cur[j] = h[i - 1] == r[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  s.rougeL = 100.0 * f1(static_cast<double>(prev[r.size()]), static_cast<double>(h.size()),
                        static_cast<double>(r.size()));
  return s;
}

namespace {

// Depth-first branch and bound over hypothesis positions. Continuations
// (next reference position) are tried first, so the first complete
// alignment is the in-order greedy one and the bound tightens quickly.
class ChunkSearch {
 public:
  static constexpr std::size_t kNodeLimit = 200000;

  ChunkSearch(std::span<const std::string> hyp, std::span<const std::string> ref) {
    std::unordered_map<std::string, int> ids;
    auto id_of = [&](const std::string& t) { return ids.emplace(t, static_cast<int>(ids.size())).first->second; };
    for (const auto& t : hyp) hyp_.push_back(id_of(t));
    for (const auto& t : ref) ref_.push_back(id_of(t));
    const std::size_t types = ids.size();
    need_.assign(types, 0);
    hyp_left_.assign(types, 0);
    std::vector<std::size_t> ref_count(types, 0);
    for (int t : hyp_) ++hyp_left_[t];
    for (int t : ref_) ++ref_count[t];
    by_type_.resize(types);
    for (std::size_t j = 0; j < ref_.size(); ++j) by_type_[ref_[j]].push_back(j);
    for (std::size_t t = 0; t < types; ++t) {
      need_[t] = std::min(hyp_left_[t], ref_count[t]);
      matches_ += need_[t];
    }
    used_.assign(ref_.size(), false);
  }

  std::size_t matches() const { return matches_; }

  std::size_t run() {
    if (matches_ == 0) return 0;
    best_ = matches_ + 1;
    visit(0, kNone, 0);
    return best_;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // `prev_ref` is the reference position matched by hypothesis i-1, or kNone.
  void visit(std::size_t i, std::size_t prev_ref, std::size_t chunks) {
    if (chunks >= best_ || ++nodes_ > kNodeLimit) return;
    if (i == hyp_.size()) {
      best_ = chunks;
      return;
    }
    const int t = hyp_[i];
    const bool can_skip = hyp_left_[t] > need_[t];
    --hyp_left_[t];
    if (need_[t] > 0) {
      auto try_match = [&](std::size_t j) {
        if (used_[j]) return;
        const bool continues = prev_ref != kNone && j == prev_ref + 1;
        used_[j] = true;
        --need_[t];
        visit(i + 1, j, chunks + (continues ? 0 : 1));
        ++need_[t];
        used_[j] = false;
      };
      if (prev_ref != kNone && prev_ref + 1 < ref_.size() && ref_[prev_ref + 1] == t) try_match(prev_ref + 1);
      for (std::size_t j : by_type_[t])
        if (prev_ref == kNone || j != prev_ref + 1) try_match(j);
    }
    if (can_skip) visit(i + 1, kNone, chunks);
    ++hyp_left_[t];
  }

  std::vector<int> hyp_, ref_;
  std::vector<std::size_t> need_, hyp_left_;
  std::vector<std::vector<std::size_t>> by_type_;
  std::vector<bool> used_;
  std::size_t matches_ = 0;
  std::size_t best_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace

std::size_t meteor_min_chunks(std::span<const std::string> hyp, std::span<const std::string> ref) {
  return ChunkSearch(hyp, ref).run();
}

double meteor_score(std::string_view hyp, std::string_view ref) {
  if (ref.empty()) throw ValidationError("METEOR needs a non-empty reference");
  const auto h = metric_tokens(hyp);
  const auto r = metric_tokens(ref);
  ChunkSearch search(h, r);
  const double m = static_cast<double>(search.matches());
  if (m == 0) return 0.0;
  const double chunks = static_cast<double>(search.run());
  const double p = m / static_cast<double>(h.size());
  const double rc = m / static_cast<double>(r.size());
  const double f_mean = p * rc / (0.9 * p + 0.1 * rc);
  const double penalty = 0.5 * std::pow(chunks / m, 3.0);
  return 100.0 * f_mean * (1.0 - penalty);
}

std::vector<LengthBucket> cer_by_length(std::span<const std::string> hyps, std::span<const std::string> refs,
                                        std::size_t bucket_width) {
  require_aligned(hyps, refs);
  if (bucket_width == 0) throw ValidationError("bucket width must be positive");
  std::map<std::size_t, std::pair<double, std::size_t>> sums;  // bucket -> (sum, n)
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const std::size_t words = std::max<std::size_t>(1, metric_tokens(refs[s]).size());
    auto& [sum, n] = sums[(words - 1) / bucket_width];
    sum += cer(hyps[s], refs[s]);
    ++n;
  }
  std::vector<LengthBucket> out;
  for (const auto& [b, acc] : sums)
    out.push_back({b * bucket_width + 1, (b + 1) * bucket_width, acc.second,
                   acc.first / static_cast<double>(acc.second)});
  return out;
}

MetricReport evaluate_report(std::span<const std::string> hyps, std::span<const std::string> refs) {
  require_aligned(hyps, refs);
  MetricReport rep;
  rep.segment_count = hyps.size();
  rep.bleu = corpus_bleu(hyps, refs);
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto rouge = rouge_scores(hyps[s], refs[s]);
    rep.rouge1 += rouge.rouge1;
    rep.rouge2 += rouge.rouge2;
    rep.rougeL += rouge.rougeL;
    rep.cer += cer(hyps[s], refs[s]);
    rep.wer += wer(hyps[s], refs[s]);
    rep.chrf += chrf_score(hyps[s], refs[s]);
    rep.meteor += meteor_score(hyps[s], refs[s]);
  }
  const double n = static_cast<double>(hyps.size());
  for (double* v : {&rep.rouge1, &rep.rouge2, &rep.rougeL, &rep.cer, &rep.wer, &rep.chrf, &rep.meteor}) *v /= n;
  return rep;
}

std::string format_report(const MetricReport& report, std::span<const LengthBucket> buckets) {
  auto fixed2 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "segments=" << report.segment_count << '\n';
  out << "rouge1=" << fixed2(report.rouge1) << '\n';
  out << "rouge2=" << fixed2(report.rouge2) << '\n';
  out << "rougeL=" << fixed2(report.rougeL) << '\n';
  out << "bleu=" << fixed2(report.bleu) << '\n';
  out << "cer=" << fixed2(report.cer) << '\n';
  out << "wer=" << fixed2(report.wer) << '\n';
  out << "chrf=" << fixed2(report.chrf) << '\n';
  out << "meteor=" << fixed2(report.meteor) << '\n';
  for (const auto& b : buckets) {
    out << "cer_by_length." << b.first_words << '-' << b.last_words << '=' << fixed2(b.mean_cer) << '\n';
    out << "cer_by_length." << b.first_words << '-' << b.last_words << ".segments=" << b.segments << '\n';
  }
  return out.str();
}

}  // namespace translit
