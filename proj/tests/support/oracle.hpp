#pragma once

// Reference implementations written independently of the library code they
// check. They favour obviousness over speed.

#include <span>
#include <vector>

#include "lefa/aligned_corpus.hpp"
#include "lefa/aligner.hpp"
#include "lefa/embeddings.hpp"

namespace lefa::test {

/// Full enumeration: every original is scored against every adapted sentence,
/// candidates are sorted by (score desc, adapted index asc) and the head is
/// taken. One-to-one conflicts are settled by scanning all rival originals.
AlignedCorpus brute_force_align(const Document& original, const Document& adapted,
                                std::span<const EmbeddingVector> original_vectors,
                                std::span<const EmbeddingVector> adapted_vectors,
                                const AlignmentConfig& config);

/// Same, reading the file-backed store on its own (JSONL parsed here, keys
/// recomputed per sentence) instead of going through the provider.
AlignedCorpus brute_force_align(const Document& original, const Document& adapted,
                                const EmbeddingProviderConfig& provider,
                                const AlignmentConfig& config);

/// Plain textbook cosine on raw component lists.
double reference_cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lefa::test
