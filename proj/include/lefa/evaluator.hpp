#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lefa/error_taxonomy.hpp"
#include "lefa/linter.hpp"
#include "lefa/morph.hpp"
#include "lefa/simplify.hpp"

namespace lefa {

/// Determiner-noun pairs (distance <= 2, skipping one prenominal adjective)
/// whose number or gender disagree by suffix heuristics.
std::vector<ErrorInstance> detect_agreement_errors(const Document& document,
                                                   const MorphLexicon& lexicon);

/// One instance per synonym group with two or more distinct members present.
std::vector<ErrorInstance> detect_term_inconsistency(
    const Document& document, const std::vector<std::set<std::string>>& synonym_groups);

/// What counts as a sentence defining a term.
struct DefinitionPattern {
  std::set<std::string> copulas{"es", "son", "significa", "significan", "quiere"};
  bool colon = true;
  bool parenthesis = true;
};

/// Glossary terms and rare words used without a defining sentence anywhere
/// in the document. One instance per distinct term, at its first occurrence.
std::vector<ErrorInstance> detect_unexplained_terms(
    const Document& document, const std::map<std::string, std::string>& glossary,
    const FrequencyLexicon* frequency_lexicon, int rare_rank_threshold,
    const DefinitionPattern& pattern = {});

/// All three detectors with the linter resources.
std::vector<ErrorInstance> detect_errors(const Document& document,
                                         const LintResources& resources);

/// Adapter for simplify_and_audit.
AuditHook make_audit_hook(const LintResources& resources);

struct GuidelineCounts {
  std::size_t gold_violations = 0;
  std::size_t gold_advisories = 0;
  std::size_t candidate_violations = 0;
  std::size_t candidate_advisories = 0;

  long net_delta() const {
    return static_cast<long>(candidate_violations + candidate_advisories) -
           static_cast<long>(gold_violations + gold_advisories);
  }
  bool operator==(const GuidelineCounts&) const = default;
};

struct ComplianceDelta {
  std::array<GuidelineCounts, kGuidelineCount> rows{};

  const GuidelineCounts& operator[](Guideline id) const { return rows[guideline_index(id)]; }
  bool is_zero() const;
};

ComplianceDelta compare_compliance(const Document& gold, const Document& candidate,
                                   const LintConfig& config, const MorphLexicon& lexicon);

nlohmann::ordered_json to_json(const ComplianceDelta& delta);

}  // namespace lefa
