#include "translit/script.hpp"

#include <fstream>
#include <sstream>

#include "translit/error.hpp"
#include "translit/unicode.hpp"

namespace translit {

std::string_view to_string(ScriptId id) {
  return id == ScriptId::bengali ? "bengali" : "devanagari";
}

ScriptId parse_script_id(std::string_view name) {
  if (name == "bengali" || name == "bn") return ScriptId::bengali;
  if (name == "devanagari" || name == "hi") return ScriptId::devanagari;
  throw ValidationError("unknown script '" + std::string(name) + "'");
}

CharClass ScriptSpec::classify(char32_t cp) const {
  if (cp == virama) return CharClass::virama;
  if (consonants.count(cp)) return CharClass::consonant;
  if (diacritics.count(cp)) return CharClass::diacritic;
  if (vowels.count(cp)) return CharClass::vowel;
  if (nasals.count(cp)) return CharClass::nasal;
  return CharClass::none;
}

const std::string* MappingTable::lookup(char32_t cp) const {
  for (const auto* m : {&c_map, &d_map, &v_map, &n_map}) {
    auto it = m->find(cp);
    if (it != m->end()) return &it->second;
  }
  return nullptr;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<char32_t> parse_codepoint_label(std::string_view s) {
  if (s.size() < 3 || (s[0] != 'U' && s[0] != 'u') || s[1] != '+') return std::nullopt;
  char32_t cp = 0;
  for (char c : s.substr(2)) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else return std::nullopt;
    cp = cp * 16 + static_cast<char32_t>(v);
    if (cp > 0x10FFFF) return std::nullopt;
  }
  return cp;
}

// Accepts "U+XXXX" or a literal glyph that is a single codepoint.
std::optional<char32_t> parse_native(std::string_view s) {
  if (auto cp = parse_codepoint_label(s)) return cp;
  auto cps = utf8_decode(s);
  if (cps.size() == 1) return cps[0];
  return std::nullopt;
}

bool is_roman_value(std::string_view value) {
  if (value.empty()) return false;
  for (char32_t cp : utf8_decode(value)) {
    if ((cp >= U'a' && cp <= U'z') || cp == U'\'' || cp == 0x0308) continue;
    return false;
  }
  return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

ScriptTables parse_mapping(std::string_view text, const std::string& origin) {
  ScriptTables out;
  bool have_header = false;
  std::map<char32_t, std::size_t> seen;  // codepoint -> line of first definition

  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    auto line = strip_cr(raw);
    ++line_no;
    if (trim(line).empty()) continue;

    if (line.starts_with("#script=")) {
      auto cols = split_tabs(line);
      std::optional<ScriptId> script;
      std::optional<char32_t> virama;
      for (auto col : cols) {
        if (col.starts_with("#script=")) {
          try {
            script = parse_script_id(col.substr(8));
          } catch (const ValidationError& e) {
            throw ParseError(origin, line_no, e.what());
          }
        } else if (col.starts_with("#virama=")) {
          virama = parse_native(col.substr(8));
        }
      }
      if (!script || !virama) throw ParseError(origin, line_no, "header needs #script= and #virama=");
      out.spec.script = *script;
      out.spec.virama = *virama;
      have_header = true;
      continue;
    }
    if (line.starts_with('#')) continue;
    if (!have_header) throw ParseError(origin, line_no, "rule before the #script= header line");

    auto cols = split_tabs(line);
    if (cols.size() != 3) throw ParseError(origin, line_no, "expected 3 tab-separated columns");
    std::map<char32_t, std::string>* target = nullptr;
    std::set<char32_t>* cls = nullptr;
    if (cols[0] == "V") target = &out.table.v_map, cls = &out.spec.vowels;
    else if (cols[0] == "C") target = &out.table.c_map, cls = &out.spec.consonants;
    else if (cols[0] == "D") target = &out.table.d_map, cls = &out.spec.diacritics;
    else if (cols[0] == "N") target = &out.table.n_map, cls = &out.spec.nasals;
    else throw ParseError(origin, line_no, "unknown class '" + std::string(cols[0]) + "'");

    auto cp = parse_native(cols[1]);
    if (!cp) throw ParseError(origin, line_no, "bad codepoint '" + std::string(cols[1]) + "'");
    if (!is_roman_value(cols[2]))
      throw ParseError(origin, line_no, "bad roman value '" + std::string(cols[2]) + "'");
    if (*cp == out.spec.virama)
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": " + codepoint_label(*cp) +
                            " is the virama and cannot be mapped");
    if (auto it = seen.find(*cp); it != seen.end()) {
      const bool same_class = target->count(*cp) != 0;
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": " +
                            (same_class ? "duplicate key " : "class overlap for ") +
                            codepoint_label(*cp) + " (first defined on line " +
                            std::to_string(it->second) + ")");
    }
    seen.emplace(*cp, line_no);
    target->emplace(*cp, std::string(cols[2]));
    cls->insert(*cp);
  }
  if (!have_header) throw ValidationError(origin + ": missing #script= header line");

  for (const auto& [cp, line] : seen) {
    std::u32string key(1, cp);
    auto canonical = normalize_nfc(key);
    if (canonical != key) out.spec.recompose.emplace(std::move(canonical), cp);
    for (char32_t part : decompose_nfd(key))
      if (!seen.count(part) && part != out.spec.virama) out.spec.word_marks.insert(part);
  }
  return out;
}

ScriptTables load_mapping(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open mapping file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mapping(buf.str(), path.string());
}

const ScriptTables& default_tables(ScriptId id) {
  static const ScriptTables bengali = parse_mapping(default_mapping_text(ScriptId::bengali), "bengali.tsv");
  static const ScriptTables devanagari =
      parse_mapping(default_mapping_text(ScriptId::devanagari), "devanagari.tsv");
  return id == ScriptId::bengali ? bengali : devanagari;
}

std::u32string normalize_word(std::u32string_view word, const ScriptSpec& spec) {
  auto nfc = normalize_nfc(word);
  if (spec.recompose.empty()) return nfc;
  std::u32string out;
  out.reserve(nfc.size());
  for (std::size_t i = 0; i < nfc.size(); ++i) {
    if (i + 1 < nfc.size()) {
      auto it = spec.recompose.find(nfc.substr(i, 2));
      if (it != spec.recompose.end()) {
        out.push_back(it->second);
        ++i;
        continue;
      }
    }
    out.push_back(nfc[i]);
  }
  return out;
}

std::vector<TransliterationUnit> split_units(std::u32string_view word, const ScriptSpec& spec) {
  std::vector<TransliterationUnit> units;
  const std::size_t n = word.size();
  std::size_t i = 0;
  auto cls_at = [&](std::size_t k) { return k < n ? spec.classify(word[k]) : CharClass::none; };

  while (i < n) {
    TransliterationUnit u;
    switch (cls_at(i)) {
      case CharClass::vowel:
        u.kind = UnitKind::vowel;
        u.codepoints.push_back(word[i++]);
        break;
      case CharClass::nasal:
        u.kind = UnitKind::nasal;
        u.codepoints.push_back(word[i++]);
        break;
      case CharClass::consonant:
        u.kind = UnitKind::consonant_cluster;
        u.codepoints.push_back(word[i++]);
        while (cls_at(i) == CharClass::virama && cls_at(i + 1) == CharClass::consonant) {
          u.codepoints.push_back(word[i]);
          u.codepoints.push_back(word[i + 1]);
          i += 2;
        }
        if (cls_at(i) == CharClass::diacritic) {
          u.codepoints.push_back(word[i++]);
          u.has_diacritic = true;
        }
        if (cls_at(i) == CharClass::nasal) {
          u.codepoints.push_back(word[i++]);
          u.has_nasal = true;
        }
        break;
      default:
        u.kind = UnitKind::other;
        u.codepoints.push_back(word[i++]);
        break;
    }
    units.push_back(std::move(u));
  }
  return units;
}

}  // namespace translit
