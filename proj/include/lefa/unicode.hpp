#pragma once

// UTF-8 helpers. All offsets exposed by the toolkit count Unicode code
// points, never bytes.

#include <cstddef>
#include <string>
#include <string_view>

namespace lefa::unicode {

std::string normalize_nfc(std::string_view utf8);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);

std::size_t length(std::string_view utf8);
/// Code point slice [start, end) of a UTF-8 string.
std::string slice(std::string_view utf8, std::size_t start, std::size_t end);

std::string to_lower(std::string_view utf8);
std::string to_upper(std::string_view utf8);

/// Lowercase and strip the Spanish acute accents and diaeresis (ñ is kept).
std::string fold(std::string_view utf8);

bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_upper(char32_t c);
bool is_lower(char32_t c);
bool is_space(char32_t c);

/// Collapse whitespace runs to a single space and trim both ends.
std::string collapse_whitespace(std::string_view utf8);

bool starts_with_upper(std::string_view utf8);

}  // namespace lefa::unicode
