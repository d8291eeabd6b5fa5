#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lefa/aligned_corpus.hpp"
#include "lefa/embeddings.hpp"
#include "lefa/linter.hpp"
#include "lefa/textmodel.hpp"

namespace lefa::test {

using Rng = std::mt19937_64;

/// Resources shipped in the repository, loaded once.
const LintResources& shipped_resources();

/// Segmented and tokenized document built with the shipped resources.
Document doc(std::string_view text, Role role = Role::Adapted, std::string id = "doc",
             Theme theme = Theme::Other);

/// First sentence of `text`, tokenized.
Sentence sentence(std::string_view text);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

std::vector<double> random_vector(Rng& rng, std::size_t dims);

/// `count` distinct sentences of `words` plain lowercase words each (the first
/// capitalized), joined into one text. Sentence i has the tag "n<i>" unless
/// `tag` is empty, which keeps texts unique.
std::string synthetic_text(Rng& rng, std::size_t count, std::string_view tag);

/// Original/adapted pair with one embedding per sentence. `tie_rate` is the
/// chance that an adapted vector duplicates an earlier one, producing exact
/// score ties.
struct AlignmentInstance {
  Document original;
  Document adapted;
  std::vector<EmbeddingVector> original_vectors;
  std::vector<EmbeddingVector> adapted_vectors;
};
AlignmentInstance random_instance(Rng& rng, std::size_t max_original, std::size_t max_adapted,
                                  std::size_t dims, double tie_rate);

/// Writes every sentence vector of the instance as a file-backed store.
void write_store(const std::filesystem::path& path, const AlignmentInstance& instance);

/// Random aligned corpus with awkward text (tabs, newlines, backslashes,
/// quotes, non-ASCII) and awkward scores.
AlignedCorpus random_corpus(Rng& rng);

/// Documents with fixed per-theme text and sentence counts (texts/sentences):
/// sport 3/480, literature 2/1118, exhibitions 2/72, competitive
/// examinations 5/271. Original sentence i of a document has
/// 3 + (7 i mod 11) words; each original document has an adapted companion
/// with ceil(4n/5) sentences of 2 + (5 i mod 7) words.
std::vector<Document> theme_shaped_corpus();

}  // namespace lefa::test
