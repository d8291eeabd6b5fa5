#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lefa/textmodel.hpp"

namespace lefa {

struct SentenceRef {
  std::string doc_id;
  std::size_t index = 0;

  auto operator<=>(const SentenceRef&) const = default;
};

struct AlignmentPair {
  SentenceRef original;
  SentenceRef adapted;
  double similarity = 0.0;
  std::string original_text;
  std::string adapted_text;
  Theme theme = Theme::Other;

  bool operator==(const AlignmentPair&) const = default;
};

struct DroppedOriginal {
  SentenceRef ref;
  double best_score = 0.0;

  bool operator==(const DroppedOriginal&) const = default;
};

struct ThemeCount {
  std::size_t text_count = 0;
  std::size_t sentence_count = 0;

  bool operator==(const ThemeCount&) const = default;
};

struct CorpusStats {
  std::size_t sentence_count = 0;
  std::size_t adapted_sentence_count = 0;
  std::size_t original_words = 0;
  std::size_t adapted_words = 0;
  double mean_original_words_per_sentence = 0.0;
  double mean_adapted_words_per_sentence = 0.0;
  std::map<Theme, ThemeCount> per_theme;

  bool operator==(const CorpusStats&) const = default;
};

struct AlignedCorpus {
  std::vector<AlignmentPair> pairs;
  std::vector<DroppedOriginal> dropped_originals;
  CorpusStats stats;

  bool operator==(const AlignedCorpus&) const = default;
};

}  // namespace lefa
