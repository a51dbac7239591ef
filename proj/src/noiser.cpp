#include "translit/noiser.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "translit/error.hpp"
#include "translit/parallel.hpp"
#include "translit/unicode.hpp"

namespace translit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class SiteDraws {
 public:
  SiteDraws(double probability, std::uint64_t seed) : p_(probability), gen_(seed) {}

  bool fire() {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return u < p_;
  }

 private:
  double p_;
  std::mt19937_64 gen_;
};

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_lower(c) || (c >= 'A' && c <= 'Z'); }
bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Length of a sentence terminator at `i` ('.', '!', '?', danda, double danda), else 0.
std::size_t sentence_end_at(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == '.' || c == '!' || c == '?') return 1;
  if (s.substr(i, 3) == "\xE0\xA5\xA4" || s.substr(i, 3) == "\xE0\xA5\xA5") return 3;
  return 0;
}

std::string shorten_long_vowels(std::string_view s, SiteDraws& draws) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto pair = s.substr(i, 2);
    char replacement = 0;
    if (pair == "aa") replacement = 'a';
    else if (pair == "ee") replacement = 'i';
    else if (pair == "oo") replacement = 'u';
    if (replacement) {
      if (draws.fire()) out += replacement;
      else out += pair;
      i += 2;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string drop_medial_vowels(std::string_view s, SiteDraws& draws) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (!is_alpha(s[i])) {
      out += s[i++];
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && is_alpha(s[end])) ++end;
    for (std::size_t k = i; k < end; ++k) {
      const char c = s[k];
      const bool medial = k > i && k + 1 < end;
      if (medial && (c == 'a' || c == 'i' || c == 'u') && draws.fire()) continue;
      out += c;
    }
    i = end;
  }
  return out;
}

std::string simplify_consonants(std::string_view s, SiteDraws& draws) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto pair = s.substr(i, 2);
    std::string_view replacement;
    if (pair == "ph") replacement = "f";
    else if (pair == "sh") replacement = "s";
    else if (pair.size() == 2 && pair[0] == pair[1] && is_lower(pair[0]) && !is_vowel(pair[0]))
      replacement = pair.substr(0, 1);
    if (!replacement.empty()) {
      out += draws.fire() ? replacement : pair;
      i += 2;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string swap_vw(std::string_view s, SiteDraws& draws) {
  std::string out(s);
  for (auto& c : out) {
    char swapped = 0;
    switch (c) {
      case 'v': swapped = 'w'; break;
      case 'w': swapped = 'v'; break;
      case 'V': swapped = 'W'; break;
      case 'W': swapped = 'V'; break;
      default: break;
    }
    if (swapped && draws.fire()) c = swapped;
  }
  return out;
}

std::string jitter_case(std::string_view s, SiteDraws& draws) {
  std::string out(s);
  bool initial = true;
  for (std::size_t i = 0; i < out.size();) {
    if (auto len = sentence_end_at(out, i)) {
      initial = true;
      i += len;
      continue;
    }
    const char c = out[i];
    if (is_alpha(c)) {
      if (initial && !is_lower(c) && draws.fire()) out[i] = static_cast<char>(c - 'A' + 'a');
      initial = false;
    }
    ++i;
  }
  return out;
}

}  // namespace

std::string_view to_string(NoiseRule rule) {
  switch (rule) {
    case NoiseRule::long_vowel_shorten: return "long_vowel_shorten";
    case NoiseRule::medial_vowel_drop: return "medial_vowel_drop";
    case NoiseRule::consonant_simplify: return "consonant_simplify";
    case NoiseRule::vw_swap: return "vw_swap";
    case NoiseRule::case_jitter: return "case_jitter";
  }
  return "?";
}

NoiseProfile NoiseProfile::all_zero(std::uint64_t seed) {
  NoiseProfile p;
  p.seed = seed;
  p.probability.fill(0.0);
  return p;
}

void NoiseProfile::validate() const {
  for (auto rule : kNoiseRules) {
    const double p = (*this)[rule];
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("probability for " + std::string(to_string(rule)) + " must be in [0,1]");
  }
}

NoiseProfile parse_noise_profile(std::string_view text, const std::string& origin) {
  NoiseProfile profile;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(origin, line_no, "expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "seed") {
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError(origin, line_no, "seed must be an unsigned 64-bit integer");
      profile.seed = seed;
      continue;
    }
    bool known = false;
    for (auto rule : kNoiseRules) {
      if (key != to_string(rule)) continue;
      known = true;
      std::size_t used = 0;
      double p = -1;
      try {
        p = std::stod(std::string(value), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || !(p >= 0.0 && p <= 1.0))
        throw ParseError(origin, line_no, "probability for " + std::string(key) + " must be in [0,1]");
      profile[rule] = p;
    }
    if (!known) throw ParseError(origin, line_no, "unknown key '" + std::string(key) + "'");
  }
  return profile;
}

NoiseProfile load_noise_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open noise profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_noise_profile(buf.str(), path.string());
}

std::string format_noise_profile(const NoiseProfile& profile) {
  std::ostringstream out;
  out << "seed=" << profile.seed << '\n';
  for (auto rule : kNoiseRules) out << to_string(rule) << '=' << profile[rule] << '\n';
  return out.str();
}

std::uint64_t noise_stream_seed(std::uint64_t seed, NoiseRule rule, std::uint64_t line_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(rule) + 1));
  return splitmix64(h ^ line_index);
}

std::string apply_rule(std::string_view text, NoiseRule rule, double probability, std::uint64_t stream_seed) {
  if (probability <= 0.0) return std::string(text);
  SiteDraws draws(probability, stream_seed);
  switch (rule) {
    case NoiseRule::long_vowel_shorten: return shorten_long_vowels(text, draws);
    case NoiseRule::medial_vowel_drop: return drop_medial_vowels(text, draws);
    case NoiseRule::consonant_simplify: return simplify_consonants(text, draws);
    case NoiseRule::vw_swap: return swap_vw(text, draws);
    case NoiseRule::case_jitter: return jitter_case(text, draws);
  }
  return std::string(text);
}

std::string apply_noise(std::string_view text, const NoiseProfile& profile, std::uint64_t line_index) {
  profile.validate();
  std::string out(text);
  for (auto rule : kNoiseRules)
    out = apply_rule(out, rule, profile[rule], noise_stream_seed(profile.seed, rule, line_index));
  return out;
}

std::vector<std::string> apply_noise_lines(std::span<const std::string> lines, const NoiseProfile& profile,
                                           unsigned threads) {
  profile.validate();
  std::vector<std::string> out(lines.size());
  parallel_for(lines.size(), threads, [&](std::size_t i) { out[i] = apply_noise(lines[i], profile, i); });
  return out;
}

}  // namespace translit
