#include "translit/romanizer.hpp"

#include "translit/error.hpp"
#include "translit/parallel.hpp"
#include "translit/unicode.hpp"

namespace translit {

namespace {

const std::string& require(const std::map<char32_t, std::string>& m, char32_t cp) {
  auto it = m.find(cp);
  if (it == m.end()) throw UnmappedSymbolError(cp);
  return it->second;
}

bool is_sentence_end(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x0964 || cp == 0x0965;
}

}  // namespace

std::string map_unit(const TransliterationUnit& unit, const RomanizerConfig& cfg) {
  const auto& spec = *cfg.spec;
  const auto& table = *cfg.table;
  const auto& cps = unit.codepoints;
  switch (unit.kind) {
    case UnitKind::vowel:
      return require(table.v_map, cps.at(0));
    case UnitKind::nasal:
      return require(table.n_map, cps.at(0));
    case UnitKind::consonant_cluster: {
      std::string out = require(table.c_map, cps.at(0));
      for (std::size_t i = 1; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        if (cp == spec.virama) {
          if (i + 1 < cps.size() && spec.consonants.count(cps[i + 1])) {
            out += require(table.c_map, cps[i + 1]);
            ++i;
          }
        } else if (spec.diacritics.count(cp)) {
          out += require(table.d_map, cp);
        } else if (spec.nasals.count(cp)) {
          out += require(table.n_map, cp);
        } else {
          throw UnmappedSymbolError(cp);
        }
      }
      return out;
    }
    case UnitKind::other:
      break;
  }
  return utf8_encode(cps);
}

bool takes_schwa(std::span<const TransliterationUnit> units, std::size_t index) {
  const auto& u = units[index];
  if (u.kind != UnitKind::consonant_cluster || u.has_diacritic || u.has_nasal) return false;
  if (index == 0) return true;
  return index + 1 < units.size() && units[index + 1].kind == UnitKind::consonant_cluster;
}

std::string romanize_word(std::u32string_view word, const RomanizerConfig& cfg) {
  const auto normalized = normalize_word(word, *cfg.spec);
  const auto units = split_units(normalized, *cfg.spec);
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    out += map_unit(units[i], cfg);
    if (takes_schwa(units, i)) out += 'a';
  }
  return out;
}

std::string romanize_word(std::string_view word, const RomanizerConfig& cfg) {
  return romanize_word(utf8_decode(word), cfg);
}

RomanizeResult romanize_text(std::string_view text, const RomanizerConfig& cfg) {
  const auto& spec = *cfg.spec;
  RomanizeResult result;
  result.text.reserve(text.size());
  const auto cps = utf8_decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!spec.is_word_char(cps[i])) {
      utf8_append(result.text, cps[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && spec.is_word_char(cps[end])) ++end;
    const std::u32string_view token(cps.data() + i, end - i);
    try {
      const auto normalized = normalize_word(token, spec);
      const auto units = split_units(normalized, spec);
      bool stray = false;
      for (std::size_t k = 0; k < units.size(); ++k) {
        result.text += map_unit(units[k], cfg);
        if (takes_schwa(units, k)) result.text += 'a';
        if (units[k].kind == UnitKind::other) stray = true;
      }
      if (stray) ++result.unmapped_tokens;
    } catch (const UnmappedSymbolError&) {
      result.text += utf8_encode(token);
      ++result.unmapped_tokens;
    }
    i = end;
  }

  if (cfg.sentence_case) {
    auto chars = utf8_decode(result.text);
    bool cap_next = true;
    for (auto& cp : chars) {
      if (is_sentence_end(cp)) {
        cap_next = true;
      } else if (is_ascii_alpha(cp)) {
        if (cap_next && cp >= U'a' && cp <= U'z') cp = cp - U'a' + U'A';
        cap_next = false;
      }
    }
    result.text = utf8_encode(chars);
  }
  return result;
}

std::vector<RomanizeResult> romanize_lines(std::span<const std::string> lines, const RomanizerConfig& cfg,
                                           unsigned threads) {
  std::vector<RomanizeResult> out(lines.size());
  parallel_for(lines.size(), threads, [&](std::size_t i) { out[i] = romanize_text(lines[i], cfg); });
  return out;
}

}  // namespace translit
