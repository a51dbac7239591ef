#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "translit/romanizer.hpp"

namespace translit {

enum class Lang { hi, bn };
std::string_view to_string(Lang lang);
Lang parse_lang(std::string_view s);
ScriptId script_for(Lang lang);

struct CorpusPair {
  std::string native;
  std::string roman;
  Lang lang = Lang::bn;
  std::string source;
};

enum class CleanMode { wiki_bn, generic };
CleanMode parse_clean_mode(std::string_view s);
std::string_view to_string(CleanMode mode);

enum class DiscardReason { empty, too_short, markup };
std::string_view to_string(DiscardReason reason);

struct CleanVerdict {
  bool keep = true;
  DiscardReason reason = DiscardReason::empty;  // meaningful only when !keep

  static CleanVerdict kept() { return {}; }
  static CleanVerdict discard(DiscardReason r) { return {false, r}; }
};

inline constexpr std::size_t kMinWikiLineChars = 50;

/// wiki_bn: drop lines shorter than 50 codepoints after trimming, or carrying
/// markup (<, >, {{, }}, [[, ]], &lt;, &gt;). generic: drop empty lines only.
CleanVerdict clean_line(std::string_view line, CleanMode mode);
bool has_markup(std::string_view line);

std::string csv_header();
std::string csv_row(const CorpusPair& pair);

struct BuildOptions {
  Lang lang = Lang::bn;
  CleanMode mode = CleanMode::generic;
  /// Source tag for every row; empty means the input file name.
  std::string source;
  unsigned threads = 1;
};

struct BuildSummary {
  std::size_t lines_read = 0;
  std::size_t pairs_written = 0;
  std::size_t discarded_empty = 0;
  std::size_t discarded_too_short = 0;
  std::size_t discarded_markup = 0;
  /// Kept lines skipped because romanization left unmapped or stray marks.
  std::size_t unmapped_skipped = 0;

  std::size_t discarded() const { return discarded_empty + discarded_too_short + discarded_markup; }
};

struct NamedInput {
  std::string name;
  std::vector<std::string> lines;
};

/// In-memory pipeline: clean, romanize, and serialize as CSV (header included).
BuildSummary build_corpus_csv(std::span<const NamedInput> inputs, const RomanizerConfig& cfg,
                              const BuildOptions& options, std::string& csv_out);

/// File pipeline; the output is written atomically.
BuildSummary build_corpus(std::span<const std::filesystem::path> inputs, const RomanizerConfig& cfg,
                          const BuildOptions& options, const std::filesystem::path& out);

struct Summary {
  double mean = 0;
  std::size_t max = 0;
  std::size_t min = 0;
};

struct CorpusStats {
  std::size_t total_texts = 0;
  Summary char_count;
  Summary word_count;
  Summary sentence_count;
  std::size_t distinct_tokens = 0;
  /// vocab_growth[i] = distinct whitespace tokens in texts[0..i].
  std::vector<std::size_t> vocab_growth;
  /// length_histogram[k] = texts with char count in [50k, 50k + 50).
  std::vector<std::size_t> length_histogram;
};

inline constexpr std::size_t kHistogramBinWidth = 50;

std::size_t count_chars(std::string_view text);
std::vector<std::string_view> whitespace_tokens(std::string_view text);
/// Segments delimited by danda, '.', '!' or '?' that contain non-space text;
/// at least 1 for any text with non-space content.
std::size_t count_sentences(std::string_view text);

/// Partial statistics over a shard. merge() is associative: counts add,
/// min/max combine, token sets union.
class StatsAccumulator {
 public:
  void add(std::string_view text);
  void merge(const StatsAccumulator& other);

  std::size_t texts() const { return texts_; }
  /// Everything except vocab_growth, which needs an ordered pass.
  CorpusStats summarize() const;

 private:
  struct Field {
    std::uint64_t sum = 0;
    std::size_t max = 0;
    std::size_t min = std::numeric_limits<std::size_t>::max();
    void add(std::size_t v);
    void merge(const Field& o);
    Summary summary(std::size_t n) const;
  };

  std::size_t texts_ = 0;
  Field chars_, words_, sentences_;
  std::vector<std::size_t> histogram_;
  std::unordered_set<std::string> tokens_;
};

/// Throws ValidationError on an empty corpus.
CorpusStats compute_stats(std::span<const std::string> texts, unsigned threads = 1);

/// key=value report, fixed key order, floats with 2 decimals.
std::string format_stats_report(const CorpusStats& stats);

}  // namespace translit
