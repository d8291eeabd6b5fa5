#include "lefa/aligner.hpp"

#include <cmath>
#include <map>

#include "lefa/corpus.hpp"
#include "lefa/error.hpp"

namespace lefa {

namespace {

void check_inputs(const Document& original, const Document& adapted) {
  if (original.role != Role::Original) {
    throw Error(ErrorKind::InvalidArgument, "document " + original.id + " is not an original");
  }
  if (adapted.role != Role::Adapted) {
    throw Error(ErrorKind::InvalidArgument, "document " + adapted.id + " is not an adaptation");
  }
  if (original.sentences.empty()) {
    throw Error(ErrorKind::EmptyDocument, "original document " + original.id + " has no sentences");
  }
  if (adapted.sentences.empty()) {
    throw Error(ErrorKind::EmptyDocument, "adapted document " + adapted.id + " has no sentences");
  }
}

std::vector<std::string> sentence_texts(const Document& document) {
  std::vector<std::string> texts;
  texts.reserve(document.sentences.size());
  for (const Sentence& s : document.sentences) texts.push_back(s.text);
  return texts;
}

struct Candidate {
  std::size_t adapted = 0;
  double score = 0.0;
};

}  // namespace

void AlignmentConfig::validate() const {
  if (!std::isfinite(similarity_threshold) || similarity_threshold < -1.0 ||
      similarity_threshold > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "similarity threshold must lie in [-1, 1]");
  }
}

AlignedCorpus align_embedded(const Document& original, const Document& adapted,
                             std::span<const EmbeddingVector> original_vectors,
                             std::span<const EmbeddingVector> adapted_vectors,
                             const AlignmentConfig& config, const SegmenterConfig& segmenter) {
  config.validate();
  check_inputs(original, adapted);
  if (original_vectors.size() != original.sentences.size() ||
      adapted_vectors.size() != adapted.sentences.size()) {
    throw Error(ErrorKind::InvalidArgument, "one embedding per sentence is required");
  }

  // Best adapted candidate per original; strict comparison keeps the lowest
  // adapted index on ties.
  std::vector<Candidate> best(original.sentences.size());
  for (std::size_t o = 0; o < original_vectors.size(); ++o) {
    best[o] = {0, cosine(original_vectors[o], adapted_vectors[0])};
    for (std::size_t a = 1; a < adapted_vectors.size(); ++a) {
      const double score = cosine(original_vectors[o], adapted_vectors[a]);
      if (score > best[o].score) best[o] = {a, score};
    }
  }

  std::vector<bool> keep(best.size());
  for (std::size_t o = 0; o < best.size(); ++o) {
    keep[o] = best[o].score >= config.similarity_threshold;
  }
  if (!config.allow_many_to_one) {
    std::map<std::size_t, std::size_t> owner;  // adapted index -> winning original
    for (std::size_t o = 0; o < best.size(); ++o) {
      if (!keep[o]) continue;
      auto [it, inserted] = owner.emplace(best[o].adapted, o);
      if (inserted) continue;
      if (best[o].score > best[it->second].score) {
        keep[it->second] = false;
        it->second = o;
      } else {
        keep[o] = false;
      }
    }
  }

  AlignedCorpus corpus;
  for (std::size_t o = 0; o < best.size(); ++o) {
    const SentenceRef original_ref{original.id, original.sentences[o].index};
    if (!keep[o]) {
      corpus.dropped_originals.push_back({original_ref, best[o].score});
      continue;
    }
    const Sentence& target = adapted.sentences[best[o].adapted];
    AlignmentPair pair;
    pair.original = original_ref;
    pair.adapted = {adapted.id, target.index};
    pair.similarity = best[o].score;
    pair.original_text = original.sentences[o].text;
    pair.adapted_text = target.text;
    pair.theme = original.theme;
    corpus.pairs.push_back(std::move(pair));
  }
  if (!corpus.pairs.empty()) corpus.stats = compute_stats(corpus.pairs, segmenter);
  return corpus;
}

AlignedCorpus align(const Document& original, const Document& adapted,
                    const EmbeddingProviderConfig& provider, const AlignmentConfig& config,
                    const SegmenterConfig& segmenter) {
  config.validate();
  check_inputs(original, adapted);
  const auto original_vectors = embed_batch(sentence_texts(original), provider);
  const auto adapted_vectors = embed_batch(sentence_texts(adapted), provider);
  return align_embedded(original, adapted, original_vectors, adapted_vectors, config, segmenter);
}

}  // namespace lefa
