#include "translit/back_translit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "translit/corpus.hpp"
#include "translit/error.hpp"
#include "translit/files.hpp"
#include "translit/parallel.hpp"
#include "translit/unicode.hpp"

namespace translit {

// ---------------------------------------------------------------------------
// CharNGramModel

CharNGramModel::CharNGramModel(std::size_t order, double k, std::set<char32_t> alphabet)
    : order_(order), k_(k), alphabet_(std::move(alphabet)) {
  if (order_ < 1) throw ValidationError("n-gram order must be at least 1");
  if (!(k_ > 0)) throw ValidationError("smoothing constant k must be positive");
}

std::u32string CharNGramModel::context_of(std::u32string_view history) const {
  const std::size_t width = order_ - 1;
  std::u32string ctx(width, kBos);
  const std::size_t take = std::min(width, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            ctx.begin() + static_cast<std::ptrdiff_t>(width - take));
  return ctx;
}

void CharNGramModel::add_word(std::u32string_view word) {
  for (std::size_t i = 0; i <= word.size(); ++i) {
    const char32_t next = i < word.size() ? word[i] : kEos;
    if (next != kEos) alphabet_.insert(next);
    auto& entry = contexts_[context_of(word.substr(0, i))];
    ++entry.total;
    ++entry.next[next];
  }
}

void CharNGramModel::set_count(const std::u32string& context, char32_t next, std::uint64_t count) {
  auto& entry = contexts_[context];
  entry.total += count;
  entry.next[next] += count;
}

double CharNGramModel::prob(std::u32string_view history, char32_t next) const {
  const double denom_extra = k_ * static_cast<double>(alphabet_.size() + 1);
  const auto it = contexts_.find(context_of(history));
  if (it == contexts_.end()) return k_ / denom_extra;
  const auto n = it->second.next.find(next);
  const double count = n == it->second.next.end() ? 0.0 : static_cast<double>(n->second);
  return (count + k_) / (static_cast<double>(it->second.total) + denom_extra);
}

double CharNGramModel::log_prob(std::u32string_view history, char32_t next) const {
  return std::log(prob(history, next));
}

double CharNGramModel::score_word(std::u32string_view word) const {
  double total = 0;
  for (std::size_t i = 0; i <= word.size(); ++i)
    total += log_prob(word.substr(0, i), i < word.size() ? word[i] : kEos);
  return total;
}

CharNGramModel train_lm(std::span<const std::string> corpus, std::size_t order, double k, const ScriptSpec* spec) {
  if (corpus.empty()) throw ValidationError("language model training needs a non-empty corpus");
  std::set<char32_t> alphabet;
  if (spec) {
    for (const auto* cls : {&spec->vowels, &spec->consonants, &spec->diacritics, &spec->nasals})
      alphabet.insert(cls->begin(), cls->end());
    alphabet.insert(spec->virama);
  }
  CharNGramModel lm(order, k, std::move(alphabet));
  for (const auto& text : corpus) {
    if (spec) {
      const auto cps = utf8_decode(text);
      std::size_t i = 0;
      while (i < cps.size()) {
        if (!spec->is_word_char(cps[i])) {
          ++i;
          continue;
        }
        std::size_t end = i;
        while (end < cps.size() && spec->is_word_char(cps[end])) ++end;
        lm.add_word(normalize_word(std::u32string_view(cps).substr(i, end - i), *spec));
        i = end;
      }
    } else {
      for (auto tok : whitespace_tokens(text)) lm.add_word(utf8_decode(normalize_nfc(tok)));
    }
  }
  return lm;
}

namespace {

std::string symbol_label(char32_t cp) {
  if (cp == CharNGramModel::kBos) return "BOS";
  if (cp == CharNGramModel::kEos) return "EOS";
  return codepoint_label(cp);
}

char32_t parse_symbol(std::string_view s, const std::string& origin, std::size_t line) {
  if (s == "BOS") return CharNGramModel::kBos;
  if (s == "EOS") return CharNGramModel::kEos;
  if (s.size() < 3 || s.substr(0, 2) != "U+") throw ParseError(origin, line, "bad symbol '" + std::string(s) + "'");
  try {
    return static_cast<char32_t>(std::stoul(std::string(s.substr(2)), nullptr, 16));
  } catch (const std::exception&) {
    throw ParseError(origin, line, "bad symbol '" + std::string(s) + "'");
  }
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

std::string format_lm(const CharNGramModel& lm) {
  std::ostringstream out;
  char kbuf[64];
  std::snprintf(kbuf, sizeof kbuf, "%.17g", lm.smoothing());
  out << "#lm order=" << lm.order() << " k=" << kbuf << '\n';
  out << "#alphabet";
  for (char32_t cp : lm.alphabet()) out << ' ' << codepoint_label(cp);
  out << '\n';

  std::vector<const std::u32string*> keys;
  for (const auto& [ctx, counts] : lm.contexts()) keys.push_back(&ctx);
  std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
  for (const auto* ctx : keys) {
    std::string label;
    for (char32_t cp : *ctx) {
      if (!label.empty()) label += ' ';
      label += symbol_label(cp);
    }
    if (label.empty()) label = "-";
    for (const auto& [next, count] : lm.contexts().at(*ctx).next)
      out << label << '\t' << symbol_label(next) << '\t' << count << '\n';
  }
  return out.str();
}

CharNGramModel parse_lm(std::string_view text, const std::string& origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t order = 0;
  double k = 0;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "#lm order=%zu k=%lf", &order, &k) != 2)
    throw ParseError(origin, 1, "expected '#lm order=N k=X' header");
  if (!std::getline(in, line) || !line.starts_with("#alphabet"))
    throw ParseError(origin, 2, "expected '#alphabet' line");
  std::set<char32_t> alphabet;
  for (auto tok : split_on(std::string_view(line).substr(9), ' '))
    if (!tok.empty()) alphabet.insert(parse_symbol(tok, origin, 2));
  CharNGramModel lm(order, k, std::move(alphabet));
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_on(line, '\t');
    if (cols.size() != 3) throw ParseError(origin, line_no, "expected context<TAB>symbol<TAB>count");
    std::u32string ctx;
    if (cols[0] != "-")
      for (auto tok : split_on(cols[0], ' ')) ctx.push_back(parse_symbol(tok, origin, line_no));
    if (ctx.size() + 1 != order) throw ParseError(origin, line_no, "context length does not match order");
    std::uint64_t count = 0;
    try {
      count = std::stoull(std::string(cols[2]));
    } catch (const std::exception&) {
      throw ParseError(origin, line_no, "bad count");
    }
    lm.set_count(ctx, parse_symbol(cols[1], origin, line_no), count);
  }
  return lm;
}

void save_lm(const CharNGramModel& lm, const std::filesystem::path& path) { write_file_atomic(path, format_lm(lm)); }

CharNGramModel load_lm(const std::filesystem::path& path) { return parse_lm(read_file(path), path.string()); }

// ---------------------------------------------------------------------------
// ReverseIndex

namespace {

bool ends_in_vowel(std::string_view roman) {
  if (roman.empty()) return false;
  const char c = roman.back();
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

ReverseIndex::ReverseIndex(const ScriptTables& tables) : tables_(&tables), nodes_(1) {
  const auto& t = tables.table;
  const char32_t virama = tables.spec.virama;
  for (const auto& [v, roman] : t.v_map)
    insert({FragmentKind::vowel, std::u32string(1, v), roman, false, false, false, ends_in_vowel(roman)});
  for (const auto& [n, roman] : t.n_map)
    insert({FragmentKind::nasal, std::u32string(1, n), roman, false, false, true, ends_in_vowel(roman)});
  for (const auto& [c, croman] : t.c_map) {
    const std::u32string base(1, c);
    insert({FragmentKind::cluster_open, base + virama, croman, false, false, false, false});
    insert({FragmentKind::cluster_close, base, croman, true, false, false, false});
    insert({FragmentKind::cluster_close, base, croman + "a", true, true, false, true});
    for (const auto& [n, nroman] : t.n_map)
      insert({FragmentKind::cluster_close, base + n, croman + nroman, false, false, true, ends_in_vowel(nroman)});
    for (const auto& [d, droman] : t.d_map) {
      insert({FragmentKind::cluster_close, base + d, croman + droman, false, false, false, ends_in_vowel(droman)});
      for (const auto& [n, nroman] : t.n_map)
        insert({FragmentKind::cluster_close, base + d + n, croman + droman + nroman, false, false, true,
                ends_in_vowel(nroman)});
    }
  }
}

void ReverseIndex::insert(Fragment fragment) {
  std::size_t node = 0;
  for (char ch : fragment.roman) {
    const auto key = static_cast<unsigned char>(ch);
    auto it = nodes_[node].children.find(key);
    if (it == nodes_[node].children.end()) {
      nodes_.emplace_back();
      it = nodes_[node].children.emplace(key, nodes_.size() - 1).first;
    }
    node = it->second;
  }
  nodes_[node].fragments.push_back(fragments_.size());
  fragments_.push_back(std::move(fragment));
}

// ---------------------------------------------------------------------------
// Beam search

namespace {

enum class Pending : std::uint8_t {
  none,
  need_cluster,    // a non-initial bare cluster took the schwa
  forbid_cluster,  // a non-initial bare cluster dropped the schwa
  in_cluster,      // after consonant + virama
};

struct Hypothesis {
  std::u32string native;
  double score = 0;
  std::size_t units = 0;
  Pending pending = Pending::none;
  bool cluster_initial = false;
  bool absorbs_nasal = false;  // last unit is a cluster without a nasal sign
  bool vowel_final = false;
};

bool ranks_before(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.native < b.native;
}

// Applies `f` to `h`; false when the grammar or schwa rule rules it out.
bool extend(Hypothesis& h, const Fragment& f) {
  const bool continuing = h.pending == Pending::in_cluster;
  switch (f.kind) {
    case FragmentKind::vowel:
    case FragmentKind::nasal:
      if (continuing || h.pending == Pending::need_cluster) return false;
      if (f.kind == FragmentKind::vowel && h.units > 0 && !h.vowel_final) return false;
      if (f.kind == FragmentKind::nasal && (h.units == 0 || h.absorbs_nasal)) return false;
      ++h.units;
      h.pending = Pending::none;
      h.absorbs_nasal = false;
      h.vowel_final = f.vowel_final;
      return true;
    case FragmentKind::cluster_open:
    case FragmentKind::cluster_close:
      if (!continuing) {
        if (h.pending == Pending::forbid_cluster) return false;
        ++h.units;
        h.cluster_initial = h.units == 1;
      }
      if (f.kind == FragmentKind::cluster_open) {
        h.pending = Pending::in_cluster;
        h.vowel_final = false;
        return true;
      }
      if (f.bare) {
        if (f.schwa) {
          h.pending = h.cluster_initial ? Pending::none : Pending::need_cluster;
        } else {
          if (h.cluster_initial) return false;
          h.pending = Pending::forbid_cluster;
        }
      } else {
        h.pending = Pending::none;
      }
      h.absorbs_nasal = !f.has_nasal;
      h.vowel_final = f.vowel_final;
      return true;
  }
  return false;
}

}  // namespace

std::vector<Candidate> derom_word(std::string_view roman, const ReverseIndex& index, const CharNGramModel& lm,
                                  std::size_t beam) {
  if (roman.empty()) throw ValidationError("cannot back-transliterate an empty word");
  if (beam == 0) throw ValidationError("beam width must be at least 1");

  const std::size_t n = roman.size();
  std::vector<std::vector<Hypothesis>> at(n + 1);
  at[0].push_back({});
  for (std::size_t pos = 0; pos < n; ++pos) {
    auto& bucket = at[pos];
    if (bucket.empty()) continue;
    std::sort(bucket.begin(), bucket.end(), ranks_before);
    if (bucket.size() > beam) bucket.resize(beam);
    for (const auto& h : bucket) {
      index.for_each_match(roman, pos, [&](std::size_t len, std::size_t fi) {
        const Fragment& f = index.fragments()[fi];
        Hypothesis next = h;
        if (!extend(next, f)) return;
        for (char32_t cp : f.native) {
          next.score += lm.log_prob(next.native, cp);
          next.native.push_back(cp);
        }
        at[pos + len].push_back(std::move(next));
      });
    }
    bucket.clear();
    bucket.shrink_to_fit();
  }

  const RomanizerConfig cfg = RomanizerConfig::from(index.tables());
  std::vector<Hypothesis> done;
  for (auto& h : at[n]) {
    if (h.pending == Pending::in_cluster || h.pending == Pending::need_cluster) continue;
    h.score += lm.log_prob(h.native, CharNGramModel::kEos);
    done.push_back(std::move(h));
  }
  std::sort(done.begin(), done.end(), ranks_before);
  done.erase(std::unique(done.begin(), done.end(),
                         [](const Hypothesis& a, const Hypothesis& b) { return a.native == b.native; }),
             done.end());

  std::vector<Candidate> out;
  for (const auto& h : done) {
    if (out.size() == beam) break;
    if (romanize_word(std::u32string_view(h.native), cfg) != roman) continue;
    out.push_back({utf8_encode(h.native), h.score});
  }
  return out;
}

DeromResult derom_text(std::string_view text, const ReverseIndex& index, const CharNGramModel& lm,
                       std::size_t beam) {
  DeromResult result;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ascii_alpha(static_cast<unsigned char>(text[i]))) {
      result.text += text[i++];
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_ascii_alpha(static_cast<unsigned char>(text[end]))) ++end;
    const auto word = text.substr(i, end - i);
    std::string lower(word);
    for (auto& c : lower)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    const auto candidates = derom_word(lower, index, lm, beam);
    if (candidates.empty()) {
      result.text += word;
      ++result.fallbacks;
    } else {
      result.text += candidates.front().native;
    }
    i = end;
  }
  return result;
}

std::vector<DeromResult> derom_lines(std::span<const std::string> lines, const ReverseIndex& index,
                                     const CharNGramModel& lm, std::size_t beam, unsigned threads) {
  std::vector<DeromResult> out(lines.size());
  parallel_for(lines.size(), threads, [&](std::size_t i) { out[i] = derom_text(lines[i], index, lm, beam); });
  return out;
}

}  // namespace translit
