#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace translit {

enum class ScriptId { bengali, devanagari };

std::string_view to_string(ScriptId id);
ScriptId parse_script_id(std::string_view name);

enum class CharClass { vowel, consonant, diacritic, nasal, virama, none };

/// Codepoint classes for one script. Built from a mapping table; the class
/// sets are exactly the key sets of the corresponding table columns.
struct ScriptSpec {
  ScriptId script = ScriptId::bengali;
  std::set<char32_t> vowels;
  std::set<char32_t> consonants;
  std::set<char32_t> diacritics;
  std::set<char32_t> nasals;
  char32_t virama = 0;
  /// Sequences that NFC leaves decomposed (base + nukta) but which the table
  /// keys as a single precomposed codepoint. Applied after NFC.
  std::map<std::u32string, char32_t> recompose;
  /// Combining marks outside every class that still belong to native words
  /// (nukta, length marks): the non-key codepoints of table keys' NFD forms.
  std::set<char32_t> word_marks;

  CharClass classify(char32_t cp) const;
  /// True for any codepoint that takes part in native-script words.
  bool is_word_char(char32_t cp) const {
    return classify(cp) != CharClass::none || word_marks.count(cp) != 0;
  }
};

/// Roman values for each mapped class.
struct MappingTable {
  std::map<char32_t, std::string> v_map;
  std::map<char32_t, std::string> c_map;
  std::map<char32_t, std::string> d_map;
  std::map<char32_t, std::string> n_map;

  /// Value for `cp` from whichever class table holds it.
  const std::string* lookup(char32_t cp) const;
};

struct ScriptTables {
  ScriptSpec spec;
  MappingTable table;
};

/// Parses the mapping TSV format. `origin` names the source in errors.
ScriptTables parse_mapping(std::string_view text, const std::string& origin = "<mapping>");
ScriptTables load_mapping(const std::filesystem::path& path);

/// Tables bundled with the library (data/bengali.tsv, data/devanagari.tsv).
const ScriptTables& default_tables(ScriptId id);
std::string_view default_mapping_text(ScriptId id);

/// NFC plus recomposition of table-keyed nukta forms.
std::u32string normalize_word(std::u32string_view word, const ScriptSpec& spec);

enum class UnitKind { vowel, consonant_cluster, nasal, other };

struct TransliterationUnit {
  UnitKind kind = UnitKind::other;
  std::u32string codepoints;
  bool has_diacritic = false;
  bool has_nasal = false;

  bool operator==(const TransliterationUnit&) const = default;
};

/// Greedy segmentation of an already-normalized word into units:
///   vowel | consonant (virama consonant)* diacritic? nasal? | nasal | other
/// A virama that does not join two consonants becomes its own `other` unit,
/// as do standalone diacritics and codepoints outside every class.
std::vector<TransliterationUnit> split_units(std::u32string_view word, const ScriptSpec& spec);

}  // namespace translit
