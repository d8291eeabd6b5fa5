#include "lefa/segmenter.hpp"

#include <fstream>

#include "lefa/error.hpp"
#include "lefa/unicode.hpp"

namespace lefa {

namespace {

using unicode::is_digit;
using unicode::is_letter;
using unicode::is_space;

bool is_terminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

bool is_closer(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U')': case U']': case U'}':
    case U'»': case U'”': case U'’': case U'›':
      return true;
    default:
      return false;
  }
}

bool is_opener(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U'(': case U'[': case U'{':
    case U'«': case U'“': case U'‘': case U'¿': case U'¡':
      return true;
    default:
      return false;
  }
}

bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

bool is_hyphen(char32_t c) { return c == U'-' || c == U'‐' || c == U'‑'; }

bool starts_with_at(std::u32string_view text, std::size_t pos, std::u32string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

std::size_t url_length(std::u32string_view text, std::size_t pos) {
  if (!starts_with_at(text, pos, U"http://") && !starts_with_at(text, pos, U"https://") &&
      !starts_with_at(text, pos, U"www.")) {
    return 0;
  }
  std::size_t end = pos;
  while (end < text.size() && !is_space(text[end])) ++end;
  // Trailing sentence punctuation is not part of the address.
  while (end > pos) {
    char32_t c = text[end - 1];
    if (c == U'.' || c == U',' || c == U';' || c == U':' || c == U')' || c == U'!' ||
        c == U'?' || is_closer(c)) {
      --end;
    } else {
      break;
    }
  }
  return end - pos;
}

std::size_t trim_end(std::u32string_view text, std::size_t start, std::size_t end) {
  while (end > start && is_space(text[end - 1])) --end;
  return end;
}

// The word ending at `dot` (inclusive), without leading openers.
std::u32string word_before(std::u32string_view text, std::size_t start, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > start && !is_space(text[begin - 1])) --begin;
  while (begin < dot && is_opener(text[begin])) ++begin;
  return std::u32string(text.substr(begin, dot + 1 - begin));
}

TokenKind classify_run(std::u32string_view run) {
  bool has_letter = false;
  bool all_upper = true;
  std::size_t letters = 0;
  for (char32_t c : run) {
    if (is_letter(c)) {
      has_letter = true;
      ++letters;
      if (!unicode::is_upper(c)) all_upper = false;
    }
  }
  if (!has_letter) return TokenKind::Number;
  if (is_digit(run.front())) {
    bool ordinal = true;
    for (char32_t c : run) {
      if (!is_digit(c) && c != U'º' && c != U'ª' && c != U'.' && c != U',') ordinal = false;
    }
    if (ordinal) return TokenKind::Number;
  }
  if (all_upper && letters >= 2) return TokenKind::AcronymCandidate;
  return TokenKind::Word;
}

}  // namespace

std::set<std::string> SegmenterConfig::default_abbreviations() {
  return {"Sr.", "Sra.", "Srta.", "Dr.", "Dra.", "D.", "Dña.", "etc.", "pág.", "págs.",
          "art.", "núm.", "aprox.", "tel.", "ej.", "vol.", "cap.", "Avda.", "ud.", "uds."};
}

std::set<std::string> SegmenterConfig::load_abbreviations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingResource, "cannot read abbreviation file " + path.string());
  std::set<std::string> lexicon;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string entry = unicode::collapse_whitespace(line);
    if (entry.empty() || entry.front() == '#') continue;
    if (entry.back() != '.') throw ParseError("abbreviation must end with '.': " + entry, number);
    lexicon.insert(unicode::normalize_nfc(entry));
  }
  return lexicon;
}

void SegmenterConfig::validate() const {
  for (const std::string& entry : abbreviation_lexicon) {
    if (entry.empty() || entry.back() != '.') {
      throw Error(ErrorKind::InvalidArgument, "abbreviation must end with '.': " + entry);
    }
  }
}

bool SegmenterConfig::is_abbreviation(std::string_view candidate) const {
  if (abbreviation_lexicon.contains(std::string(candidate))) return true;
  const std::string lower = unicode::to_lower(candidate);
  for (const std::string& entry : abbreviation_lexicon) {
    if (unicode::to_lower(entry) == lower) return true;
  }
  return false;
}

std::vector<Sentence> segment(std::string_view raw_text, const SegmenterConfig& config) {
  const std::u32string text = unicode::to_u32(raw_text);
  const std::size_t n = text.size();
  std::vector<Sentence> sentences;
  std::size_t start = std::u32string::npos;

  auto close = [&](std::size_t end) {
    end = trim_end(text, start, end);
    if (end > start) {
      Sentence sentence;
      sentence.index = sentences.size();
      sentence.char_span = {start, end};
      sentence.text = unicode::to_utf8(std::u32string_view(text).substr(start, end - start));
      sentences.push_back(std::move(sentence));
    }
    start = std::u32string::npos;
  };

  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    if (start == std::u32string::npos) {
      if (is_space(c)) {
        ++i;
        continue;
      }
      start = i;
    }

    if (c == U'\n' && config.newline_is_boundary) {
      std::size_t next = i + 1;
      while (next < n && is_space(text[next])) ++next;
      if (next < n && (unicode::is_upper(text[next]) || text[next] == U'¿' || text[next] == U'¡')) {
        close(i);
        i = next;
        continue;
      }
      ++i;
      continue;
    }

    if (!is_terminal(c)) {
      ++i;
      continue;
    }

    std::size_t end = i + 1;
    bool ellipsis = c == U'…';
    if (c == U'.') {
      while (end < n && text[end] == U'.') ++end;
      ellipsis = end - i >= 3;
    } else if (c == U'!' || c == U'?') {
      while (end < n && (text[end] == U'!' || text[end] == U'?')) ++end;
    }

    if (ellipsis && !config.ellipsis_is_boundary) {
      i = end;
      continue;
    }
    if (c == U'.' && !ellipsis && end == i + 1 &&
        config.is_abbreviation(unicode::to_utf8(word_before(text, start, i)))) {
      i = end;
      continue;
    }
    while (end < n && is_closer(text[end])) ++end;
    // "3.5", "femaddi.com", "?»," stay inside the sentence.
    if (end < n && !is_space(text[end])) {
      i = end;
      continue;
    }
    std::size_t next = end;
    while (next < n && is_space(text[next])) ++next;
    if (next < n && unicode::is_lower(text[next])) {
      i = end;
      continue;
    }
    close(end);
    i = end;
  }
  if (start != std::u32string::npos) close(n);
  return sentences;
}

std::vector<Token> tokenize_text(std::string_view utf8, const SegmenterConfig& config) {
  const std::u32string text = unicode::to_u32(utf8);
  const std::size_t n = text.size();
  std::vector<Token> tokens;

  auto emit = [&](std::size_t begin, std::size_t end, TokenKind kind) {
    tokens.push_back(
        {unicode::to_utf8(std::u32string_view(text).substr(begin, end - begin)), {begin, end}, kind});
  };

  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (std::size_t url = url_length(text, i); url > 0) {
      emit(i, i + url, TokenKind::Word);
      i += url;
      continue;
    }
    if (is_alnum(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_alnum(text[j])) {
          ++j;
        } else if (is_hyphen(text[j]) && j + 1 < n && is_alnum(text[j + 1])) {
          j += 2;
        } else if ((text[j] == U'.' || text[j] == U',') && is_digit(text[j - 1]) && j + 1 < n &&
                   is_digit(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      // Abbreviations, including dotted sequences such as "p.ej.", end with the
      // longest lexicon match.
      std::size_t abbreviation_end = 0;
      std::size_t k = j;
      while (k < n && text[k] == U'.') {
        std::u32string candidate(std::u32string_view(text).substr(i, k + 1 - i));
        if (config.is_abbreviation(unicode::to_utf8(candidate))) abbreviation_end = k + 1;
        std::size_t next = k + 1;
        if (next < n && is_letter(text[next])) {
          while (next < n && is_letter(text[next])) ++next;
          k = next;
        } else {
          break;
        }
      }
      if (abbreviation_end > 0) {
        emit(i, abbreviation_end, TokenKind::AbbreviationCandidate);
        i = abbreviation_end;
        continue;
      }
      emit(i, j, classify_run(std::u32string_view(text).substr(i, j - i)));
      i = j;
      continue;
    }
    std::size_t j = i + 1;
    if (c == U'.') {
      while (j < n && text[j] == U'.') ++j;
    }
    emit(i, j, TokenKind::Punctuation);
    i = j;
  }
  return tokens;
}

Sentence tokenize(Sentence sentence, const SegmenterConfig& config) {
  sentence.tokens = tokenize_text(sentence.text, config);
  return sentence;
}

std::size_t word_count(std::string_view text, const SegmenterConfig& config) {
  std::size_t count = 0;
  for (const Token& token : tokenize_text(text, config)) {
    if (is_countable(token.kind)) ++count;
  }
  return count;
}

void tokenize_document(Document& document, const SegmenterConfig& config) {
  for (Sentence& sentence : document.sentences) {
    sentence.tokens = tokenize_text(sentence.text, config);
  }
}

Document make_document(std::string id, Role role, Theme theme, std::string_view raw_text,
                       const SegmenterConfig& config) {
  Document document;
  document.id = std::move(id);
  document.role = role;
  document.theme = theme;
  document.raw_text = unicode::normalize_nfc(raw_text);
  document.sentences = segment(document.raw_text, config);
  tokenize_document(document, config);
  return document;
}

}  // namespace lefa
