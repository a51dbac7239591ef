#include "translit/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "translit/error.hpp"
#include "translit/files.hpp"
#include "translit/parallel.hpp"
#include "translit/unicode.hpp"

namespace translit {

std::string_view to_string(Lang lang) { return lang == Lang::hi ? "hi" : "bn"; }

Lang parse_lang(std::string_view s) {
  if (s == "hi") return Lang::hi;
  if (s == "bn") return Lang::bn;
  throw ValidationError("unknown language '" + std::string(s) + "' (expected hi or bn)");
}

ScriptId script_for(Lang lang) { return lang == Lang::hi ? ScriptId::devanagari : ScriptId::bengali; }

CleanMode parse_clean_mode(std::string_view s) {
  if (s == "wiki_bn") return CleanMode::wiki_bn;
  if (s == "generic") return CleanMode::generic;
  throw ValidationError("unknown mode '" + std::string(s) + "' (expected wiki_bn or generic)");
}

std::string_view to_string(CleanMode mode) { return mode == CleanMode::wiki_bn ? "wiki_bn" : "generic"; }

std::string_view to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::empty: return "empty";
    case DiscardReason::too_short: return "too_short";
    case DiscardReason::markup: return "markup";
  }
  return "?";
}

bool has_markup(std::string_view line) {
  static constexpr std::string_view patterns[] = {"<", ">", "{{", "}}", "[[", "]]", "&lt;", "&gt;"};
  return std::any_of(std::begin(patterns), std::end(patterns),
                     [&](std::string_view p) { return line.find(p) != std::string_view::npos; });
}

CleanVerdict clean_line(std::string_view line, CleanMode mode) {
  const auto body = trim(line);
  if (body.empty()) return CleanVerdict::discard(DiscardReason::empty);
  if (mode == CleanMode::generic) return CleanVerdict::kept();
  if (codepoint_count(body) < kMinWikiLineChars) return CleanVerdict::discard(DiscardReason::too_short);
  if (has_markup(body)) return CleanVerdict::discard(DiscardReason::markup);
  return CleanVerdict::kept();
}

std::string csv_header() { return "native,roman,lang,source\n"; }

std::string csv_row(const CorpusPair& pair) {
  std::string row = csv_field(pair.native);
  row += ',';
  row += csv_field(pair.roman);
  row += ',';
  row += to_string(pair.lang);
  row += ',';
  row += csv_field(pair.source);
  row += '\n';
  return row;
}

namespace {

struct LineOutcome {
  std::string row;
  bool kept = false;
  bool unmapped = false;
  DiscardReason reason = DiscardReason::empty;
};

}  // namespace

BuildSummary build_corpus_csv(std::span<const NamedInput> inputs, const RomanizerConfig& cfg,
                              const BuildOptions& options, std::string& csv_out) {
  BuildSummary summary;
  csv_out = csv_header();
  for (const auto& input : inputs) {
    const std::string& source = options.source.empty() ? input.name : options.source;
    std::vector<LineOutcome> outcomes(input.lines.size());
    parallel_for(input.lines.size(), options.threads, [&](std::size_t i) {
      auto& o = outcomes[i];
      const auto verdict = clean_line(input.lines[i], options.mode);
      if (!verdict.keep) {
        o.reason = verdict.reason;
        return;
      }
      CorpusPair pair{std::string(trim(input.lines[i])), {}, options.lang, source};
      auto roman = romanize_text(pair.native, cfg);
      if (roman.unmapped_tokens > 0) {
        o.unmapped = true;
        return;
      }
      pair.roman = std::move(roman.text);
      o.row = csv_row(pair);
      o.kept = true;
    });
    summary.lines_read += input.lines.size();
    for (const auto& o : outcomes) {
      if (o.kept) {
        csv_out += o.row;
        ++summary.pairs_written;
      } else if (o.unmapped) {
        ++summary.unmapped_skipped;
      } else if (o.reason == DiscardReason::empty) {
        ++summary.discarded_empty;
      } else if (o.reason == DiscardReason::too_short) {
        ++summary.discarded_too_short;
      } else {
        ++summary.discarded_markup;
      }
    }
  }
  return summary;
}

BuildSummary build_corpus(std::span<const std::filesystem::path> inputs, const RomanizerConfig& cfg,
                          const BuildOptions& options, const std::filesystem::path& out) {
  std::vector<NamedInput> named;
  named.reserve(inputs.size());
  for (const auto& path : inputs) named.push_back({path.filename().string(), read_lines(path)});
  std::string csv;
  auto summary = build_corpus_csv(named, cfg, options, csv);
  write_file_atomic(out, csv);
  return summary;
}

std::size_t count_chars(std::string_view text) { return codepoint_count(text); }

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t start = std::string_view::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = pos;
    if (is_space(next_codepoint(text, pos))) {
      if (start != std::string_view::npos) tokens.push_back(text.substr(start, at - start));
      start = std::string_view::npos;
    } else if (start == std::string_view::npos) {
      start = at;
    }
  }
  if (start != std::string_view::npos) tokens.push_back(text.substr(start));
  return tokens;
}

std::size_t count_sentences(std::string_view text) {
  std::size_t sentences = 0;
  bool content = false;
  for (char32_t cp : utf8_decode(text)) {
    if (cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x0964) {
      if (content) ++sentences;
      content = false;
    } else if (!is_space(cp)) {
      content = true;
    }
  }
  if (content) ++sentences;
  if (sentences == 0 && !trim(text).empty()) sentences = 1;
  return sentences;
}

void StatsAccumulator::Field::add(std::size_t v) {
  sum += v;
  max = std::max(max, v);
  min = std::min(min, v);
}

void StatsAccumulator::Field::merge(const Field& o) {
  sum += o.sum;
  max = std::max(max, o.max);
  min = std::min(min, o.min);
}

Summary StatsAccumulator::Field::summary(std::size_t n) const {
  if (n == 0) return {};
  return {static_cast<double>(sum) / static_cast<double>(n), max, min};
}

void StatsAccumulator::add(std::string_view text) {
  ++texts_;
  const auto chars = count_chars(text);
  const auto tokens = whitespace_tokens(text);
  chars_.add(chars);
  words_.add(tokens.size());
  sentences_.add(count_sentences(text));
  const auto bin = chars / kHistogramBinWidth;
  if (histogram_.size() <= bin) histogram_.resize(bin + 1, 0);
  ++histogram_[bin];
  for (auto t : tokens) tokens_.emplace(t);
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
  texts_ += other.texts_;
  chars_.merge(other.chars_);
  words_.merge(other.words_);
  sentences_.merge(other.sentences_);
  if (histogram_.size() < other.histogram_.size()) histogram_.resize(other.histogram_.size(), 0);
  for (std::size_t i = 0; i < other.histogram_.size(); ++i) histogram_[i] += other.histogram_[i];
  tokens_.insert(other.tokens_.begin(), other.tokens_.end());
}

CorpusStats StatsAccumulator::summarize() const {
  CorpusStats s;
  s.total_texts = texts_;
  s.char_count = chars_.summary(texts_);
  s.word_count = words_.summary(texts_);
  s.sentence_count = sentences_.summary(texts_);
  s.distinct_tokens = tokens_.size();
  s.length_histogram = histogram_;
  return s;
}

CorpusStats compute_stats(std::span<const std::string> texts, unsigned threads) {
  if (texts.empty()) throw ValidationError("corpus statistics need at least one text");
  threads = std::max(1u, threads);
  const std::size_t shards = std::min<std::size_t>(threads, texts.size());
  const std::size_t chunk = (texts.size() + shards - 1) / shards;
  std::vector<StatsAccumulator> partial(shards);
  parallel_for(shards, threads, [&](std::size_t s) {
    const std::size_t end = std::min(texts.size(), (s + 1) * chunk);
    for (std::size_t i = s * chunk; i < end; ++i) partial[s].add(texts[i]);
  });
  StatsAccumulator total;
  for (const auto& p : partial) total.merge(p);
  auto stats = total.summarize();

  std::unordered_set<std::string_view> seen;
  stats.vocab_growth.reserve(texts.size());
  for (const auto& t : texts) {
    for (auto tok : whitespace_tokens(t)) seen.insert(tok);
    stats.vocab_growth.push_back(seen.size());
  }
  return stats;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_summary(std::ostringstream& out, std::string_view name, const Summary& s) {
  out << name << ".mean=" << fixed2(s.mean) << '\n';
  out << name << ".max=" << s.max << '\n';
  out << name << ".min=" << s.min << '\n';
}

}  // namespace

std::string format_stats_report(const CorpusStats& stats) {
  std::ostringstream out;
  out << "total_texts=" << stats.total_texts << '\n';
  write_summary(out, "char_count", stats.char_count);
  write_summary(out, "word_count", stats.word_count);
  write_summary(out, "sentence_count", stats.sentence_count);
  out << "distinct_tokens=" << stats.distinct_tokens << '\n';
  out << "histogram.bin_width=" << kHistogramBinWidth << '\n';
  for (std::size_t k = 0; k < stats.length_histogram.size(); ++k) {
    out << "histogram." << k * kHistogramBinWidth << '-' << (k + 1) * kHistogramBinWidth - 1 << '='
        << stats.length_histogram[k] << '\n';
  }
  out << "vocab_growth=";
  for (std::size_t i = 0; i < stats.vocab_growth.size(); ++i) {
    if (i) out << ',';
    out << stats.vocab_growth[i];
  }
  out << '\n';
  return out.str();
}

}  // namespace translit
