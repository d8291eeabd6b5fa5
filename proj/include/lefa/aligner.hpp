#pragma once

#include <span>

#include "lefa/aligned_corpus.hpp"
#include "lefa/embeddings.hpp"
#include "lefa/segmenter.hpp"
#include "lefa/textmodel.hpp"

namespace lefa {

enum class TieBreak { LowestAdaptedIndex };

struct AlignmentConfig {
  double similarity_threshold = 0.5;
  bool allow_many_to_one = true;
  TieBreak tie_break = TieBreak::LowestAdaptedIndex;

  /// Throws InvalidArgument when the threshold lies outside [-1, 1].
  void validate() const;
};

/// Pairs each original sentence with its most similar adapted sentence.
/// Originals whose best score falls below the threshold are dropped. With
/// allow_many_to_one=false, an adapted sentence claimed by several originals
/// keeps only the highest-scoring one; the others are dropped, never re-matched.
///
/// Throws EmptyDocument, InvalidArgument (wrong roles) and provider errors.
AlignedCorpus align(const Document& original, const Document& adapted,
                    const EmbeddingProviderConfig& provider, const AlignmentConfig& config,
                    const SegmenterConfig& segmenter = {});

/// Same contract with the sentence embeddings already computed, in sentence order.
AlignedCorpus align_embedded(const Document& original, const Document& adapted,
                             std::span<const EmbeddingVector> original_vectors,
                             std::span<const EmbeddingVector> adapted_vectors,
                             const AlignmentConfig& config, const SegmenterConfig& segmenter = {});

}  // namespace lefa
