#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "translit/romanizer.hpp"

namespace translit {

/// Character n-gram model over native words with add-k smoothing:
///   P(c | ctx) = (count(ctx c) + k) / (count(ctx .) + k (V + 1))
/// where V is the alphabet size and the extra outcome is end-of-word.
class CharNGramModel {
 public:
  static constexpr char32_t kBos = 0x02;
  static constexpr char32_t kEos = 0x03;

  CharNGramModel(std::size_t order, double k, std::set<char32_t> alphabet);

  std::size_t order() const { return order_; }
  double smoothing() const { return k_; }
  const std::set<char32_t>& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }

  /// Counts one word, padded with order-1 BOS symbols and a final EOS.
  void add_word(std::u32string_view word);

  /// `history` is the word so far; only its last order-1 symbols matter and
  /// missing positions are BOS. `next` may be kEos.
  double prob(std::u32string_view history, char32_t next) const;
  double log_prob(std::u32string_view history, char32_t next) const;
  /// Log-probability of a whole word including its end-of-word event.
  double score_word(std::u32string_view word) const;

  struct ContextCounts {
    std::uint64_t total = 0;
    std::map<char32_t, std::uint64_t> next;
  };
  const std::unordered_map<std::u32string, ContextCounts>& contexts() const { return contexts_; }
  void set_count(const std::u32string& context, char32_t next, std::uint64_t count);

 private:
  std::u32string context_of(std::u32string_view history) const;

  std::size_t order_;
  double k_;
  std::set<char32_t> alphabet_;
  std::unordered_map<std::u32string, ContextCounts> contexts_;
};

/// Trains on native words. With a script spec, words are the maximal runs of
/// native characters (normalized as the romanizer does) and the alphabet also
/// covers every table codepoint; without one, words are whitespace tokens
/// under NFC.
CharNGramModel train_lm(std::span<const std::string> corpus, std::size_t order, double k,
                        const ScriptSpec* spec = nullptr);

std::string format_lm(const CharNGramModel& lm);
CharNGramModel parse_lm(std::string_view text, const std::string& origin = "<lm>");
void save_lm(const CharNGramModel& lm, const std::filesystem::path& path);
CharNGramModel load_lm(const std::filesystem::path& path);

enum class FragmentKind {
  vowel,          // independent vowel
  nasal,          // standalone nasal sign
  cluster_open,   // consonant + virama; the cluster continues
  cluster_close,  // consonant [+ vowel sign] [+ nasal]; the cluster ends
};

/// A native piece and the Roman text it produces in context.
struct Fragment {
  FragmentKind kind = FragmentKind::vowel;
  std::u32string native;
  std::string roman;
  bool bare = false;   // cluster_close without vowel sign or nasal
  bool schwa = false;  // roman carries the inherent "a"
  bool has_nasal = false;
  bool vowel_final = false;
};

/// Trie from Roman strings to native fragments, built by inverting a mapping
/// table.
class ReverseIndex {
 public:
  explicit ReverseIndex(const ScriptTables& tables);

  const ScriptTables& tables() const { return *tables_; }
  const std::vector<Fragment>& fragments() const { return fragments_; }

  /// Fragments whose Roman form equals roman.substr(pos, len), for every len.
  /// Calls fn(len, fragment_index).
  template <typename Fn>
  void for_each_match(std::string_view roman, std::size_t pos, Fn&& fn) const {
    std::size_t node = 0;
    for (std::size_t i = pos; i < roman.size(); ++i) {
      const auto it = nodes_[node].children.find(static_cast<unsigned char>(roman[i]));
      if (it == nodes_[node].children.end()) return;
      node = it->second;
      for (std::size_t f : nodes_[node].fragments) fn(i + 1 - pos, f);
    }
  }

  std::size_t size() const { return fragments_.size(); }

 private:
  struct Node {
    std::map<unsigned char, std::size_t> children;
    std::vector<std::size_t> fragments;
  };
  void insert(Fragment fragment);

  const ScriptTables* tables_;
  std::vector<Fragment> fragments_;
  std::vector<Node> nodes_;
};

struct Candidate {
  std::string native;
  double score = 0;  // log-probability under the LM, <= 0
};

/// Beam search over trie segmentations of `roman`. Every returned candidate
/// romanizes back to `roman` exactly. Highest score first, ties by native
/// codepoint order; at most `beam` results. Throws on empty input or beam 0.
std::vector<Candidate> derom_word(std::string_view roman, const ReverseIndex& index, const CharNGramModel& lm,
                                  std::size_t beam);

struct DeromResult {
  std::string text;
  /// Words with no candidate, copied through unchanged.
  std::size_t fallbacks = 0;
};

/// Top-1 per word (maximal ASCII letter runs, lowercased for lookup);
/// everything between words is copied verbatim.
DeromResult derom_text(std::string_view text, const ReverseIndex& index, const CharNGramModel& lm,
                       std::size_t beam);

std::vector<DeromResult> derom_lines(std::span<const std::string> lines, const ReverseIndex& index,
                                     const CharNGramModel& lm, std::size_t beam, unsigned threads);

}  // namespace translit
