#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lefa {

/// Half-open [start, end) range of code points.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool contains(const Span& other) const { return start <= other.start && other.end <= end; }
  auto operator<=>(const Span&) const = default;
};

enum class Role { Original, Adapted };

enum class Theme { Sport, Literature, Exhibitions, CompetitiveExaminations, Other };

enum class TokenKind { Word, Number, Punctuation, AcronymCandidate, AbbreviationCandidate };

std::string_view to_string(Role role);
std::string_view to_string(Theme theme);
std::string_view to_string(TokenKind kind);
std::optional<Role> parse_role(std::string_view text);
std::optional<Theme> parse_theme(std::string_view text);

inline constexpr Theme kAllThemes[] = {Theme::Sport, Theme::Literature, Theme::Exhibitions,
                                       Theme::CompetitiveExaminations, Theme::Other};

struct Token {
  std::string text;
  Span span;  // relative to the owning sentence
  TokenKind kind = TokenKind::Word;

  bool operator==(const Token&) const = default;
};

/// Word, Number, AcronymCandidate and AbbreviationCandidate tokens count as words.
bool is_countable(TokenKind kind);

struct Sentence {
  std::size_t index = 0;
  std::string text;
  Span char_span;  // into Document::raw_text
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

std::size_t word_count(const Sentence& sentence);

struct Document {
  std::string id;
  Role role = Role::Original;
  Theme theme = Theme::Other;
  std::string raw_text;  // NFC
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

/// Code point slice of a sentence's text.
std::string span_text(const Sentence& sentence, const Span& span);

/// Serializes the bit-exact document schema
/// {"id","role","theme","text","sentences":[{"index","span":[s,e],"text"}]}.
/// Tokens are not part of the schema.
nlohmann::ordered_json to_json(const Document& document);

/// Parses the document schema and checks every sentence against raw_text.
/// Returned sentences carry no tokens. Throws ParseError.
Document document_from_json(const nlohmann::json& json);

}  // namespace lefa
