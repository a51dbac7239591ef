#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translit/script.hpp"

namespace translit {

struct RomanizerConfig {
  const ScriptSpec* spec = nullptr;
  const MappingTable* table = nullptr;
  bool sentence_case = false;

  static RomanizerConfig from(const ScriptTables& tables, bool sentence_case = false) {
    return {&tables.spec, &tables.table, sentence_case};
  }
};

/// Roman form of a single unit, without the implicit schwa.
std::string map_unit(const TransliterationUnit& unit, const RomanizerConfig& cfg);

/// True when the unit at `index` takes the inherent "a": a bare consonant
/// cluster (no vowel sign, no nasal) that is word-initial or is followed by
/// another consonant cluster.
bool takes_schwa(std::span<const TransliterationUnit> units, std::size_t index);

/// Forward transliteration of one word. Throws UnmappedSymbolError.
std::string romanize_word(std::u32string_view word, const RomanizerConfig& cfg);
std::string romanize_word(std::string_view word, const RomanizerConfig& cfg);

struct RomanizeResult {
  std::string text;
  /// Native tokens that kept unmapped or stray marks (and were passed through).
  std::size_t unmapped_tokens = 0;
};

/// Romanizes free text: native runs go through romanize_word, everything else
/// is copied verbatim. Never throws on content.
RomanizeResult romanize_text(std::string_view text, const RomanizerConfig& cfg);

/// Line-parallel romanize_text; output order equals input order.
std::vector<RomanizeResult> romanize_lines(std::span<const std::string> lines, const RomanizerConfig& cfg,
                                           unsigned threads);

}  // namespace translit
