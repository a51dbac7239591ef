#pragma once

#include <string>
#include <string_view>

namespace translit {

/// Decodes the codepoint at `pos` and advances past it. Invalid bytes decode
/// as U+FFFD and advance by one.
char32_t next_codepoint(std::string_view s, std::size_t& pos);

/// Decodes UTF-8; invalid sequences become U+FFFD.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
void utf8_append(std::string& out, char32_t cp);

/// Canonical composition (NFC).
std::string normalize_nfc(std::string_view s);
std::u32string normalize_nfc(std::u32string_view s);
/// Canonical decomposition (NFD).
std::u32string decompose_nfd(std::u32string_view s);

/// "U+0995" style label.
std::string codepoint_label(char32_t cp);

bool is_space(char32_t cp);
bool is_ascii_alpha(char32_t cp);

/// Number of codepoints in a UTF-8 string.
std::size_t codepoint_count(std::string_view s);

/// Strips leading/trailing whitespace (ASCII and common Unicode spaces).
std::string_view trim(std::string_view s);

}  // namespace translit
