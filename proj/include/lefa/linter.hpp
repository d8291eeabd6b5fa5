#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lefa/guidelines.hpp"
#include "lefa/morph.hpp"
#include "lefa/segmenter.hpp"
#include "lefa/textmodel.hpp"

namespace lefa {

enum class Severity { Violation, Advisory };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Guideline guideline = Guideline::G1;
  Severity severity = Severity::Advisory;
  std::string doc_id;
  std::size_t sentence = 0;
  Span span;
  std::string message;
  std::string evidence;

  bool operator==(const Diagnostic&) const = default;
};

/// {"guideline","severity","sentence","span":[s,e],"message","evidence"}
nlohmann::ordered_json to_json(const Diagnostic& diagnostic);

/// Word -> rank (1 = most frequent).
class FrequencyLexicon {
 public:
  FrequencyLexicon() = default;
  explicit FrequencyLexicon(std::unordered_map<std::string, int> ranks);
  /// TSV `word<TAB>rank`, '#' comments allowed. Throws ParseError(line).
  static FrequencyLexicon load(const std::filesystem::path& path);

  std::optional<int> rank(std::string_view lower) const;
  bool contains(std::string_view lower) const { return rank(lower).has_value(); }
  std::size_t size() const { return ranks_.size(); }

 private:
  std::unordered_map<std::string, int> ranks_;
};

struct LintConfig {
  std::optional<FrequencyLexicon> frequency_lexicon;  // G4, G6, G8
  int rare_rank_threshold = 5000;
  std::map<std::string, std::string> glossary;
  std::optional<std::vector<std::set<std::string>>> synonym_groups;  // G11
  std::optional<std::vector<std::string>> idiom_list;                // G10
  std::set<std::string> foreign_allowlist;
  std::set<std::string> acronym_allowlist;
  int max_simple_sentence_words = 25;
  int max_commas = 1;
  std::set<std::string> subordinators{"que",   "cuando",   "aunque", "porque",
                                      "si",    "mientras", "donde",  "como"};
  std::set<Guideline> enabled = all_rules();

  static std::set<Guideline> all_rules();
  /// Throws InvalidArgument for non-positive thresholds.
  void validate() const;
  /// Throws MissingResource naming the first enabled rule whose resource is absent.
  void require_resources() const;
};

/// Everything the linter needs, loaded from one resource directory:
/// frequency.tsv, synonyms.json, glossary.json, idioms.txt, acronyms.txt,
/// foreign_allowlist.txt, morph_lexicon.json, abbreviations.txt.
struct LintResources {
  LintConfig config;
  MorphLexicon morph;
  SegmenterConfig segmenter;

  /// Optional files may be absent; the linter raises MissingResource when an
  /// enabled rule needs one. Malformed files throw ParseError.
  static LintResources load(const std::filesystem::path& dir);
};

std::vector<Diagnostic> lint_sentence(const Sentence& sentence, const LintConfig& config,
                                      const MorphLexicon& lexicon, std::string_view doc_id = {});

/// Sentence diagnostics plus the document-level G11 check, ordered by
/// (sentence, span start, guideline).
std::vector<Diagnostic> lint_document(const Document& document, const LintConfig& config,
                                      const MorphLexicon& lexicon);

bool has_violations(const std::vector<Diagnostic>& diagnostics);

/// Spans of capitalized words that are not allowlisted acronyms: a single
/// candidate longer than six letters, or a run of two or more candidates.
std::vector<Span> capital_spans(const Sentence& sentence, const LintConfig& config);

/// Spelling patterns that do not occur in native Spanish words.
bool looks_foreign(std::string_view lower);

struct TermOccurrence {
  std::size_t sentence = 0;
  Span span;
  std::string surface;
  std::string member;  // the synonym-group entry it matched

  bool operator==(const TermOccurrence&) const = default;
};

/// Synonym group with at least two distinct members present in a document.
struct SynonymConflict {
  std::size_t group_index = 0;
  std::vector<std::string> members_found;  // in order of first occurrence
  std::vector<TermOccurrence> occurrences;
};

/// Shared by the G11 rule and the evaluator's term-inconsistency detector.
std::vector<SynonymConflict> find_synonym_conflicts(
    const Document& document, const std::vector<std::set<std::string>>& groups);

/// Surface forms a synonym-group entry matches (itself and its plural).
std::set<std::string> inflections(std::string_view lemma);

enum class Applicability { Applicable, NotApplicable };

struct ApplicabilityEntry {
  Applicability status = Applicability::Applicable;
  std::string reason;
  Checkability checkability = Checkability::Heuristic;
};

struct ApplicabilityReport {
  std::array<ApplicabilityEntry, kGuidelineCount> entries;

  const ApplicabilityEntry& operator[](Guideline id) const {
    return entries[guideline_index(id)];
  }
  bool applicable(Guideline id) const {
    return (*this)[id].status == Applicability::Applicable;
  }
  std::set<Guideline> not_applicable() const;
  std::size_t applicable_count() const;
};

/// Trigger-based rules (G1, G3, G7, G9, G16) are NotApplicable when their
/// trigger never occurs. Everything else applies to any non-empty document.
ApplicabilityReport applicability(const Document& document, const LintConfig& config,
                                  const MorphLexicon& lexicon);

nlohmann::ordered_json to_json(const ApplicabilityReport& report);

}  // namespace lefa
