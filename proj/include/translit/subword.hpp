#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "translit/corpus.hpp"

namespace translit {

/// Shared subword inventory trained by greedy pair merging. Special tokens
/// occupy ids 0-5 and count toward target_size.
class SubwordVocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr int kLangHi = 4;
  static constexpr int kLangBn = 5;
  static constexpr std::size_t kNumSpecials = 6;

  /// Prepended to every word; decodes back to a space.
  static constexpr std::string_view kWordBoundary = "▁";
  /// What decode() prints for kUnk.
  static constexpr std::string_view kUnkGlyph = "⁇";

  SubwordVocab() = default;
  SubwordVocab(std::size_t target_size, std::vector<std::string> tokens,
               std::vector<std::pair<std::string, std::string>> merges);

  std::size_t target_size() const { return target_size_; }
  std::size_t size() const { return tokens_.size(); }
  std::size_t shortfall() const { return target_size_ > size() ? target_size_ - size() : 0; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }

  /// Token id, or -1 when absent.
  int id(std::string_view token) const;
  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  static int lang_id(Lang lang) { return lang == Lang::hi ? kLangHi : kLangBn; }

  /// Merge rank of (left, right) by id, or -1.
  int merge_rank(int left, int right) const;

  bool operator==(const SubwordVocab& o) const { return tokens_ == o.tokens_ && merges_ == o.merges_; }

 private:
  std::size_t target_size_ = 0;
  std::vector<std::string> tokens_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::unordered_map<std::string, int> ids_;
  std::unordered_map<std::uint64_t, int> ranks_;
};

/// Starts from the characters of the corpus (plus the word boundary) and
/// repeatedly merges the most frequent adjacent pair, ties broken by the
/// lexicographically smallest pair (byte order). Stops at target_size tokens
/// or when every word is a single symbol.
SubwordVocab train_bpe(std::span<const std::string> corpus, std::size_t target_size);

std::vector<int> encode(std::string_view text, Lang lang, const SubwordVocab& vocab);
std::string decode(std::span<const int> ids, const SubwordVocab& vocab);

std::string format_vocab(const SubwordVocab& vocab);
SubwordVocab parse_vocab(std::string_view text, const std::string& origin = "<vocab>");
void save_vocab(const SubwordVocab& vocab, const std::filesystem::path& path);
SubwordVocab load_vocab(const std::filesystem::path& path);

}  // namespace translit
