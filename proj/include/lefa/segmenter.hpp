#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lefa/textmodel.hpp"

namespace lefa {

struct SegmenterConfig {
  /// Every entry ends with "."; matching is case-insensitive.
  std::set<std::string> abbreviation_lexicon = default_abbreviations();
  bool ellipsis_is_boundary = false;
  bool newline_is_boundary = true;

  static std::set<std::string> default_abbreviations();
  /// Reads one abbreviation per line ('#' comments allowed).
  static std::set<std::string> load_abbreviations(const std::filesystem::path& path);

  /// Throws InvalidArgument when a lexicon entry does not end with ".".
  void validate() const;
  bool is_abbreviation(std::string_view candidate) const;
};

/// Splits NFC text into sentences (no tokens). Spans index raw_text in code points.
std::vector<Sentence> segment(std::string_view raw_text, const SegmenterConfig& config);

/// Returns the sentence with its tokens filled in.
Sentence tokenize(Sentence sentence, const SegmenterConfig& config);

std::vector<Token> tokenize_text(std::string_view text, const SegmenterConfig& config);

/// Word count of arbitrary text under the sentence tokenization rules.
std::size_t word_count(std::string_view text, const SegmenterConfig& config);

/// NFC-normalizes, segments and tokenizes.
Document make_document(std::string id, Role role, Theme theme, std::string_view raw_text,
                       const SegmenterConfig& config);

/// Tokenizes every sentence of a parsed document in place.
void tokenize_document(Document& document, const SegmenterConfig& config);

}  // namespace lefa
