#include "translit/subword.hpp"

#include <map>
#include <set>
#include <sstream>

#include "translit/error.hpp"
#include "translit/files.hpp"
#include "translit/unicode.hpp"

namespace translit {

namespace {

constexpr std::string_view kSpecialNames[SubwordVocab::kNumSpecials] = {"<pad>", "<unk>", "<s>",
                                                                        "</s>",  "<2hi>", "<2bn>"};

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Words of `text` split on single spaces; each carries the boundary prefix.
std::vector<std::string> marked_words(std::string_view text) {
  std::vector<std::string> words;
  if (text.empty()) return words;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(' ', start);
    const auto piece = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    words.push_back(std::string(SubwordVocab::kWordBoundary) + std::string(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return words;
}

std::vector<std::string> split_chars(std::string_view word) {
  std::vector<std::string> chars;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const std::size_t at = pos;
    next_codepoint(word, pos);
    chars.emplace_back(word.substr(at, pos - at));
  }
  return chars;
}

}  // namespace

SubwordVocab::SubwordVocab(std::size_t target_size, std::vector<std::string> tokens,
                           std::vector<std::pair<std::string, std::string>> merges)
    : target_size_(target_size), tokens_(std::move(tokens)), merges_(std::move(merges)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!ids_.emplace(tokens_[i], static_cast<int>(i)).second)
      throw ValidationError("duplicate vocabulary token '" + tokens_[i] + "'");
  }
  for (std::size_t r = 0; r < merges_.size(); ++r) {
    const int a = id(merges_[r].first);
    const int b = id(merges_[r].second);
    if (a < 0 || b < 0 || id(merges_[r].first + merges_[r].second) < 0)
      throw ValidationError("merge " + std::to_string(r) + " references unknown tokens");
    ranks_.emplace(pair_key(a, b), static_cast<int>(r));
  }
}

int SubwordVocab::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

int SubwordVocab::merge_rank(int left, int right) const {
  auto it = ranks_.find(pair_key(left, right));
  return it == ranks_.end() ? -1 : it->second;
}

SubwordVocab train_bpe(std::span<const std::string> corpus, std::size_t target_size) {
  if (corpus.empty()) throw ValidationError("subword training needs a non-empty corpus");

  std::map<std::string, std::int64_t> word_counts;
  for (const auto& line : corpus)
    for (auto& w : marked_words(line)) ++word_counts[w];

  std::set<std::string> alphabet{std::string(SubwordVocab::kWordBoundary)};
  for (const auto& [w, n] : word_counts)
    for (auto& c : split_chars(w)) alphabet.insert(std::move(c));
  if (target_size <= SubwordVocab::kNumSpecials + alphabet.size())
    throw ValidationError("target size " + std::to_string(target_size) + " must exceed specials + base characters (" +
                          std::to_string(SubwordVocab::kNumSpecials + alphabet.size()) + ")");

  std::vector<std::string> tokens(std::begin(kSpecialNames), std::end(kSpecialNames));
  std::vector<std::string> symbols;  // symbol id -> string
  std::unordered_map<std::string, int> symbol_ids;
  auto intern = [&](const std::string& s) {
    auto [it, fresh] = symbol_ids.emplace(s, static_cast<int>(symbols.size()));
    if (fresh) symbols.push_back(s);
    return it->second;
  };
  for (const auto& c : alphabet) {
    intern(c);
    tokens.push_back(c);
  }

  struct Word {
    std::vector<int> syms;
    std::int64_t freq;
  };
  std::vector<Word> words;
  words.reserve(word_counts.size());
  for (const auto& [w, n] : word_counts) {
    Word word{{}, n};
    for (auto& c : split_chars(w)) word.syms.push_back(symbol_ids.at(c));
    words.push_back(std::move(word));
  }

  struct Candidate {
    std::int64_t freq;
    int a, b;
  };
  auto better = [&symbols](const Candidate& x, const Candidate& y) {
    if (x.freq != y.freq) return x.freq > y.freq;
    if (x.a != y.a) return symbols[x.a] < symbols[y.a];
    return symbols[x.b] < symbols[y.b];
  };
  std::set<Candidate, decltype(better)> queue(better);
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  std::unordered_map<std::uint64_t, std::set<std::size_t>> where;

  auto adjust = [&](int a, int b, std::int64_t delta, std::size_t word) {
    const auto key = pair_key(a, b);
    auto& count = counts[key];
    if (count > 0) queue.erase(Candidate{count, a, b});
    count += delta;
    if (count > 0) queue.insert(Candidate{count, a, b});
    if (delta > 0) where[key].insert(word);
  };
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t i = 0; i + 1 < words[w].syms.size(); ++i)
      adjust(words[w].syms[i], words[w].syms[i + 1], words[w].freq, w);

  std::vector<std::pair<std::string, std::string>> merges;
  std::set<std::string> token_set(tokens.begin(), tokens.end());
  while (tokens.size() < target_size && !queue.empty()) {
    const Candidate best = *queue.begin();
    const std::string merged = symbols[best.a] + symbols[best.b];
    merges.emplace_back(symbols[best.a], symbols[best.b]);
    if (token_set.insert(merged).second) tokens.push_back(merged);
    const int merged_id = intern(merged);

    const auto affected = where[pair_key(best.a, best.b)];
    for (std::size_t w : affected) {
      auto& syms = words[w].syms;
      bool present = false;
      for (std::size_t i = 0; i + 1 < syms.size(); ++i)
        if (syms[i] == best.a && syms[i + 1] == best.b) present = true;
      if (!present) continue;
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) adjust(syms[i], syms[i + 1], -words[w].freq, w);
      std::vector<int> next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == best.a && syms[i + 1] == best.b) {
          next.push_back(merged_id);
          ++i;
        } else {
          next.push_back(syms[i]);
        }
      }
      syms = std::move(next);
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) adjust(syms[i], syms[i + 1], words[w].freq, w);
    }
  }
  return SubwordVocab(target_size, std::move(tokens), std::move(merges));
}

std::vector<int> encode(std::string_view text, Lang lang, const SubwordVocab& vocab) {
  std::vector<int> ids{SubwordVocab::lang_id(lang)};
  for (const auto& word : marked_words(text)) {
    std::vector<int> syms;
    for (const auto& c : split_chars(word)) {
      const int id = vocab.id(c);
      syms.push_back(id < 0 ? SubwordVocab::kUnk : id);
    }
    while (syms.size() > 1) {
      int best_rank = -1;
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        if (syms[i] == SubwordVocab::kUnk || syms[i + 1] == SubwordVocab::kUnk) continue;
        const int r = vocab.merge_rank(syms[i], syms[i + 1]);
        if (r >= 0 && (best_rank < 0 || r < best_rank)) best_rank = r;
      }
      if (best_rank < 0) break;
      const auto& [left, right] = vocab.merges()[static_cast<std::size_t>(best_rank)];
      const int a = vocab.id(left), b = vocab.id(right), merged = vocab.id(left + right);
      std::vector<int> next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == a && syms[i + 1] == b) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(syms[i]);
        }
      }
      syms = std::move(next);
    }
    ids.insert(ids.end(), syms.begin(), syms.end());
  }
  ids.push_back(SubwordVocab::kEos);
  return ids;
}

std::string decode(std::span<const int> ids, const SubwordVocab& vocab) {
  std::string joined;
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab.size())
      throw ValidationError("token id " + std::to_string(id) + " out of range");
    if (id == SubwordVocab::kUnk) {
      joined += SubwordVocab::kUnkGlyph;
    } else if (static_cast<std::size_t>(id) >= SubwordVocab::kNumSpecials) {
      joined += vocab.token(id);
    }
  }
  std::string out;
  out.reserve(joined.size());
  const auto marker = SubwordVocab::kWordBoundary;
  for (std::size_t i = 0; i < joined.size();) {
    if (std::string_view(joined).substr(i, marker.size()) == marker) {
      out += ' ';
      i += marker.size();
    } else {
      out += joined[i++];
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

namespace {

std::string escape_token(std::string_view t) {
  std::string out;
  if (!t.empty() && t.front() == '#') out += '\\';
  for (char c : t) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_token(std::string_view t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '\\' || i + 1 == t.size()) {
      out += t[i];
      continue;
    }
    switch (t[++i]) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      default: out += t[i];
    }
  }
  return out;
}

}  // namespace

std::string format_vocab(const SubwordVocab& vocab) {
  std::ostringstream out;
  out << "#bpe target_size=" << vocab.target_size() << " size=" << vocab.size()
      << " shortfall=" << vocab.shortfall() << '\n';
  for (const auto& t : vocab.tokens()) out << escape_token(t) << '\n';
  out << "#merges\n";
  for (const auto& [a, b] : vocab.merges()) out << escape_token(a) << ' ' << escape_token(b) << '\n';
  return out.str();
}

SubwordVocab parse_vocab(std::string_view text, const std::string& origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#bpe target_size="))
    throw ParseError(origin, 1, "expected '#bpe target_size=N' header");
  std::size_t target = 0;
  try {
    target = std::stoul(line.substr(17));
  } catch (const std::exception&) {
    throw ParseError(origin, 1, "bad target_size");
  }
  std::vector<std::string> tokens;
  std::vector<std::pair<std::string, std::string>> merges;
  bool in_merges = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!in_merges && line == "#merges") {
      in_merges = true;
      continue;
    }
    if (!in_merges) {
      tokens.push_back(unescape_token(line));
      continue;
    }
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw ParseError(origin, line_no, "merge line needs two tokens");
    merges.emplace_back(unescape_token(std::string_view(line).substr(0, sp)),
                        unescape_token(std::string_view(line).substr(sp + 1)));
  }
  if (!in_merges) throw ParseError(origin, line_no, "missing #merges section");
  if (tokens.size() < SubwordVocab::kNumSpecials) throw ParseError(origin, line_no, "missing special tokens");
  for (std::size_t i = 0; i < SubwordVocab::kNumSpecials; ++i)
    if (tokens[i] != kSpecialNames[i]) throw ParseError(origin, i + 2, "special token mismatch");
  return SubwordVocab(target, std::move(tokens), std::move(merges));
}

void save_vocab(const SubwordVocab& vocab, const std::filesystem::path& path) {
  write_file_atomic(path, format_vocab(vocab));
}

SubwordVocab load_vocab(const std::filesystem::path& path) {
  return parse_vocab(read_file(path), path.string());
}

}  // namespace translit
