#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace translit {

/// Informal-spelling rules, applied in this order.
enum class NoiseRule : std::uint8_t {
  long_vowel_shorten,  // "aa"->"a", "ee"->"i", "oo"->"u"
  medial_vowel_drop,   // delete a/i/u strictly inside a word
  consonant_simplify,  // "ph"->"f", "sh"->"s", doubled consonant -> single
  vw_swap,             // v <-> w
  case_jitter,         // lowercase a sentence-initial capital
};

inline constexpr std::array<NoiseRule, 5> kNoiseRules = {
    NoiseRule::long_vowel_shorten, NoiseRule::medial_vowel_drop, NoiseRule::consonant_simplify,
    NoiseRule::vw_swap, NoiseRule::case_jitter};

std::string_view to_string(NoiseRule rule);

struct NoiseProfile {
  static constexpr double kDefaultProbability = 0.3;

  std::uint64_t seed = 42;
  std::array<double, kNoiseRules.size()> probability{kDefaultProbability, kDefaultProbability,
                                                     kDefaultProbability, kDefaultProbability,
                                                     kDefaultProbability};

  double& operator[](NoiseRule r) { return probability[static_cast<std::size_t>(r)]; }
  double operator[](NoiseRule r) const { return probability[static_cast<std::size_t>(r)]; }

  static NoiseProfile all_zero(std::uint64_t seed = 42);
  void validate() const;
};

/// key=value profile; unknown keys and out-of-range probabilities are errors.
NoiseProfile parse_noise_profile(std::string_view text, const std::string& origin = "<profile>");
NoiseProfile load_noise_profile(const std::filesystem::path& path);
std::string format_noise_profile(const NoiseProfile& profile);

/// Seed of the random stream used by `rule` on line `line_index`.
/// SplitMix64 finalizer over (seed, rule, line); the stream itself is
/// std::mt19937_64, whose output sequence is fixed by the standard.
std::uint64_t noise_stream_seed(std::uint64_t seed, NoiseRule rule, std::uint64_t line_index);

/// Applies every enabled rule in order. Within a rule, candidate sites are
/// visited left to right and each fires when its uniform draw is below the
/// rule's probability. Depends only on (text, profile, line_index).
std::string apply_noise(std::string_view text, const NoiseProfile& profile, std::uint64_t line_index = 0);

std::string apply_rule(std::string_view text, NoiseRule rule, double probability, std::uint64_t stream_seed);

std::vector<std::string> apply_noise_lines(std::span<const std::string> lines, const NoiseProfile& profile,
                                           unsigned threads);

}  // namespace translit
