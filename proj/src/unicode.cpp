#include "lefa/unicode.hpp"

#include <algorithm>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "lefa/error.hpp"

namespace lefa::unicode {

namespace {

icu::UnicodeString from_utf8(std::string_view utf8) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string from_unicode(const icu::UnicodeString& text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

const icu::Locale& spanish() {
  static const icu::Locale locale("es");
  return locale;
}

char32_t fold_char(char32_t c) {
  switch (c) {
    case U'á': return U'a';
    case U'é': return U'e';
    case U'í': return U'i';
    case U'ó': return U'o';
    case U'ú':
    case U'ü': return U'u';
    default: return c;
  }
}

}  // namespace

std::string normalize_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::InvalidArgument, "ICU NFC normalizer unavailable");
  }
  icu::UnicodeString normalized = nfc->normalize(from_utf8(utf8), status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::InvalidArgument, "text could not be NFC-normalized");
  }
  return from_unicode(normalized);
}

std::u32string to_u32(std::string_view utf8) {
  icu::UnicodeString text = from_utf8(utf8);
  std::u32string out;
  out.reserve(static_cast<std::size_t>(text.length()));
  for (int32_t i = 0; i < text.length();) {
    UChar32 c = text.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

std::string to_utf8(std::u32string_view text) {
  icu::UnicodeString out;
  for (char32_t c : text) out.append(static_cast<UChar32>(c));
  return from_unicode(out);
}

std::size_t length(std::string_view utf8) { return to_u32(utf8).size(); }

std::string slice(std::string_view utf8, std::size_t start, std::size_t end) {
  std::u32string text = to_u32(utf8);
  end = std::min(end, text.size());
  start = std::min(start, end);
  return to_utf8(std::u32string_view(text).substr(start, end - start));
}

std::string to_lower(std::string_view utf8) {
  icu::UnicodeString text = from_utf8(utf8);
  text.toLower(spanish());
  return from_unicode(text);
}

std::string to_upper(std::string_view utf8) {
  icu::UnicodeString text = from_utf8(utf8);
  text.toUpper(spanish());
  return from_unicode(text);
}

std::string fold(std::string_view utf8) {
  std::u32string text = to_u32(to_lower(utf8));
  for (char32_t& c : text) c = fold_char(c);
  return to_utf8(text);
}

bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }
bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }
bool is_upper(char32_t c) { return u_isupper(static_cast<UChar32>(c)); }
bool is_lower(char32_t c) { return u_islower(static_cast<UChar32>(c)); }
bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

std::string collapse_whitespace(std::string_view utf8) {
  std::u32string out;
  bool pending_space = false;
  for (char32_t c : to_u32(utf8)) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return to_utf8(out);
}

bool starts_with_upper(std::string_view utf8) {
  std::u32string text = to_u32(utf8);
  return !text.empty() && is_upper(text.front());
}

}  // namespace lefa::unicode
