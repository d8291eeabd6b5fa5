#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>

#include "lefa/aligned_corpus.hpp"
#include "lefa/segmenter.hpp"
#include "lefa/textmodel.hpp"

namespace lefa {

inline constexpr std::string_view kSchemaVersion = "1";

/// Statistics over aligned pairs. Throws EmptyCorpus when there are none.
CorpusStats compute_stats(std::span<const AlignmentPair> pairs,
                          const SegmenterConfig& segmenter = {});
CorpusStats compute_stats(const AlignedCorpus& corpus, const SegmenterConfig& segmenter = {});

/// Statistics over a set of tokenized documents: sentence_count and per_theme
/// count original documents, adapted totals come from adapted documents.
/// Throws EmptyCorpus when no original sentence exists.
CorpusStats compute_stats(std::span<const Document> documents);

enum class PairFormat { Jsonl, Tsv };

/// Picks TSV for a ".tsv" extension, JSONL otherwise.
PairFormat format_for_path(const std::filesystem::path& path);

void export_pairs(const AlignedCorpus& corpus, PairFormat format, std::ostream& out);
void export_pairs(const AlignedCorpus& corpus, const std::filesystem::path& path);

/// Pair records, then one record per dropped original. JSONL pair records:
/// {"version","orig_doc","orig_idx","adp_doc","adp_idx","score","orig_text","adp_text","theme"};
/// dropped records: {"version","orig_doc","orig_idx","best_score","dropped":true}.
/// TSV has one header row and a `kind` column ("pair" or "dropped").
///
/// Import recomputes the stats. Throws ParseError (with 1-based line) and
/// SchemaVersionMismatch.
AlignedCorpus import_pairs(std::istream& in, PairFormat format,
                           const SegmenterConfig& segmenter = {});
AlignedCorpus import_pairs(const std::filesystem::path& path,
                           const SegmenterConfig& segmenter = {});

/// TSV cell escaping: backslash, tab, newline and carriage return.
std::string escape_tsv(std::string_view text);
std::string unescape_tsv(std::string_view text);

/// The key: value block printed by `lefa stats`.
std::string format_stats(const CorpusStats& stats);
nlohmann::ordered_json to_json(const CorpusStats& stats);

}  // namespace lefa
