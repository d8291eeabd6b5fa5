#include "lefa/textmodel.hpp"

#include "lefa/error.hpp"
#include "lefa/unicode.hpp"

namespace lefa {

std::string_view to_string(Role role) {
  return role == Role::Original ? "original" : "adapted";
}

std::string_view to_string(Theme theme) {
  switch (theme) {
    case Theme::Sport: return "sport";
    case Theme::Literature: return "literature";
    case Theme::Exhibitions: return "exhibitions";
    case Theme::CompetitiveExaminations: return "competitive_examinations";
    case Theme::Other: return "other";
  }
  return "other";
}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "Word";
    case TokenKind::Number: return "Number";
    case TokenKind::Punctuation: return "Punctuation";
    case TokenKind::AcronymCandidate: return "AcronymCandidate";
    case TokenKind::AbbreviationCandidate: return "AbbreviationCandidate";
  }
  return "Word";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "original") return Role::Original;
  if (text == "adapted") return Role::Adapted;
  return std::nullopt;
}

std::optional<Theme> parse_theme(std::string_view text) {
  for (Theme theme : kAllThemes) {
    if (to_string(theme) == text) return theme;
  }
  return std::nullopt;
}

bool is_countable(TokenKind kind) { return kind != TokenKind::Punctuation; }

std::size_t word_count(const Sentence& sentence) {
  std::size_t count = 0;
  for (const Token& token : sentence.tokens) {
    if (is_countable(token.kind)) ++count;
  }
  return count;
}

std::string span_text(const Sentence& sentence, const Span& span) {
  return unicode::slice(sentence.text, span.start, span.end);
}

nlohmann::ordered_json to_json(const Document& document) {
  nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
  for (const Sentence& sentence : document.sentences) {
    sentences.push_back({{"index", sentence.index},
                         {"span", {sentence.char_span.start, sentence.char_span.end}},
                         {"text", sentence.text}});
  }
  return {{"id", document.id},
          {"role", to_string(document.role)},
          {"theme", to_string(document.theme)},
          {"text", document.raw_text},
          {"sentences", std::move(sentences)}};
}

Document document_from_json(const nlohmann::json& json) {
  try {
    Document document;
    document.id = json.at("id").get<std::string>();
    auto role = parse_role(json.at("role").get<std::string>());
    if (!role) throw ParseError("unknown role " + json.at("role").dump());
    document.role = *role;
    auto theme = parse_theme(json.at("theme").get<std::string>());
    if (!theme) throw ParseError("unknown theme " + json.at("theme").dump());
    document.theme = *theme;
    document.raw_text = json.at("text").get<std::string>();

    const std::u32string raw = unicode::to_u32(document.raw_text);
    std::size_t previous_end = 0;
    for (const auto& item : json.at("sentences")) {
      Sentence sentence;
      sentence.index = item.at("index").get<std::size_t>();
      const auto& span = item.at("span");
      if (!span.is_array() || span.size() != 2) throw ParseError("span must be [start, end]");
      sentence.char_span = {span[0].get<std::size_t>(), span[1].get<std::size_t>()};
      sentence.text = item.at("text").get<std::string>();

      if (sentence.index != document.sentences.size()) {
        throw ParseError("sentence indices must be 0-based and consecutive");
      }
      if (sentence.char_span.start >= sentence.char_span.end ||
          sentence.char_span.end > raw.size() || sentence.char_span.start < previous_end) {
        throw ParseError("sentence " + std::to_string(sentence.index) +
                         " span is out of order or out of range");
      }
      std::u32string_view slice = std::u32string_view(raw).substr(
          sentence.char_span.start, sentence.char_span.size());
      if (unicode::to_utf8(slice) != sentence.text) {
        throw ParseError("sentence " + std::to_string(sentence.index) +
                         " text does not match its span");
      }
      previous_end = sentence.char_span.end;
      document.sentences.push_back(std::move(sentence));
    }
    return document;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("document JSON: ") + e.what());
  }
}

}  // namespace lefa
