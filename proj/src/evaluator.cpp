#include "lefa/evaluator.hpp"

#include <algorithm>
#include <memory>

#include "lefa/unicode.hpp"

namespace lefa {

namespace {

struct DeterminerInfo {
  bool plural;
  Gender gender;
};

std::optional<DeterminerInfo> determiner_info(std::string_view lower) {
  static const std::map<std::string_view, DeterminerInfo> kDeterminers{
      {"el", {false, Gender::Masculine}},  {"la", {false, Gender::Feminine}},
      {"los", {true, Gender::Masculine}},  {"las", {true, Gender::Feminine}},
      {"un", {false, Gender::Masculine}},  {"una", {false, Gender::Feminine}},
      {"unos", {true, Gender::Masculine}}, {"unas", {true, Gender::Feminine}},
      {"del", {false, Gender::Masculine}}, {"al", {false, Gender::Masculine}},
  };
  if (auto it = kDeterminers.find(lower); it != kDeterminers.end()) return it->second;
  return std::nullopt;
}

bool only_letters(std::string_view text) {
  const std::u32string cps = unicode::to_u32(text);
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), unicode::is_letter);
}

const MorphLexicon& default_lexicon() {
  static const MorphLexicon lexicon;
  return lexicon;
}

std::string lower_of(const Token& token) { return unicode::to_lower(token.text); }

// Index of the noun a determiner at `i` introduces, skipping one prenominal
// adjective.
std::optional<std::size_t> noun_after(const Sentence& sentence, std::size_t i,
                                      const AgreementLexicon& agreement) {
  std::size_t j = i + 1;
  if (j < sentence.tokens.size() &&
      agreement.prenominal_adjectives.contains(lower_of(sentence.tokens[j]))) {
    ++j;
  }
  if (j >= sentence.tokens.size() || j > i + 2) return std::nullopt;
  const Token& token = sentence.tokens[j];
  if (token.kind != TokenKind::Word || !only_letters(token.text)) return std::nullopt;
  if (unicode::starts_with_upper(token.text)) return std::nullopt;  // proper noun
  return j;
}

std::string gender_name(Gender gender) {
  return gender == Gender::Masculine ? "masculine" : "feminine";
}

bool defines(const Sentence& sentence, std::size_t k, const DefinitionPattern& pattern) {
  const auto& tokens = sentence.tokens;
  if (k + 1 < tokens.size()) {
    const std::string& next = tokens[k + 1].text;
    if (pattern.colon && next == ":") return true;
    if (pattern.parenthesis && next == "(") return true;
  }
  for (std::size_t j = k + 1; j < tokens.size(); ++j) {
    const std::string word = lower_of(tokens[j]);
    if (!pattern.copulas.contains(word)) continue;
    if (word != "quiere") return true;
    if (j + 1 < tokens.size() && lower_of(tokens[j + 1]) == "decir") return true;
  }
  return false;
}

void sort_errors(std::vector<ErrorInstance>& errors) {
  std::stable_sort(errors.begin(), errors.end(), [](const ErrorInstance& a, const ErrorInstance& b) {
    return std::tie(a.sentence, a.span.start, a.error_class) <
           std::tie(b.sentence, b.span.start, b.error_class);
  });
}

}  // namespace

std::vector<ErrorInstance> detect_agreement_errors(const Document& document,
                                                   const MorphLexicon& lexicon) {
  const AgreementLexicon& agreement = lexicon.data().agreement;
  std::vector<ErrorInstance> out;
  for (const Sentence& sentence : document.sentences) {
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      const auto det = determiner_info(lower_of(sentence.tokens[i]));
      if (!det) continue;
      const auto j = noun_after(sentence, i, agreement);
      if (!j) continue;
      const std::string noun = lower_of(sentence.tokens[*j]);
      // Verb forms after la/los/las are clitic objects, not nouns.
      if (is_function_word(noun) || !classify_word(noun, lexicon).is_unknown()) continue;

      std::string problem;
      if (!agreement.invariant_nouns.contains(noun)) {
        const bool plural = looks_plural(noun, agreement);
        if (det->plural && !plural) problem = "plural determiner with singular noun";
        if (!det->plural && plural) problem = "singular determiner with plural noun";
      }
      const Gender gender = noun_gender(noun, agreement);
      const bool el_feminine = !det->plural && det->gender == Gender::Masculine &&
                               agreement.el_feminine_nouns.contains(noun);
      if (problem.empty() && gender != Gender::Unknown && gender != det->gender && !el_feminine) {
        problem = gender_name(det->gender) + " determiner with " + gender_name(gender) + " noun";
      }
      if (problem.empty()) continue;
      const Span span{sentence.tokens[i].span.start, sentence.tokens[*j].span.end};
      out.push_back(make_error(ErrorClass::AgreementError, sentence.index, span,
                               "'" + span_text(sentence, span) + "': " + problem));
    }
  }
  return out;
}

std::vector<ErrorInstance> detect_term_inconsistency(
    const Document& document, const std::vector<std::set<std::string>>& synonym_groups) {
  std::vector<ErrorInstance> out;
  for (const SynonymConflict& conflict : find_synonym_conflicts(document, synonym_groups)) {
    const std::string& second = conflict.members_found[1];
    auto anchor = std::find_if(conflict.occurrences.begin(), conflict.occurrences.end(),
                               [&](const TermOccurrence& o) { return o.member == second; });
    std::string detail = "same referent named";
    for (std::size_t m = 0; m < conflict.members_found.size(); ++m) {
      detail += (m == 0 ? " '" : (m + 1 == conflict.members_found.size() ? "' and '" : "', '")) +
                conflict.members_found[m];
    }
    detail += "'; occurrences:";
    for (const TermOccurrence& o : conflict.occurrences) {
      detail += " " + o.surface + "@" + std::to_string(o.sentence) + "[" +
                std::to_string(o.span.start) + "," + std::to_string(o.span.end) + ")";
    }
    out.push_back(make_error(ErrorClass::TermInconsistency, anchor->sentence, anchor->span,
                             std::move(detail)));
  }
  return out;
}

std::vector<ErrorInstance> detect_unexplained_terms(
    const Document& document, const std::map<std::string, std::string>& glossary,
    const FrequencyLexicon* frequency_lexicon, int rare_rank_threshold,
    const DefinitionPattern& pattern) {
  std::map<std::string, std::string> surface_to_term;
  for (const auto& [term, definition] : glossary) {
    for (const std::string& form : inflections(term)) surface_to_term.emplace(form, term);
  }

  struct Use {
    std::size_t sentence;
    Span span;
    std::string surface;
    std::string reason;
  };
  std::map<std::string, Use> first_use;
  std::vector<std::string> order;
  std::set<std::string> defined;

  for (const Sentence& sentence : document.sentences) {
    std::size_t first_word = 0;
    while (first_word < sentence.tokens.size() &&
           sentence.tokens[first_word].kind == TokenKind::Punctuation) {
      ++first_word;
    }
    for (std::size_t k = 0; k < sentence.tokens.size(); ++k) {
      const Token& token = sentence.tokens[k];
      if (token.kind != TokenKind::Word || !only_letters(token.text)) continue;
      const std::string lower = lower_of(token);
      std::string term;
      std::string reason;
      if (auto it = surface_to_term.find(lower); it != surface_to_term.end()) {
        term = it->second;
        reason = "glossary term";
      } else if (frequency_lexicon != nullptr && k != first_word &&
                 unicode::starts_with_upper(token.text)) {
        continue;
      } else if (frequency_lexicon != nullptr && unicode::length(lower) >= 4 &&
                 !is_function_word(lower) && classify_word(lower, default_lexicon()).is_unknown()) {
        const auto rank = frequency_lexicon->rank(lower);
        if (rank && *rank <= rare_rank_threshold) continue;
        term = lower;
        reason = rank ? "rare word (rank " + std::to_string(*rank) + ")" : "word not in lexicon";
      } else {
        continue;
      }
      if (defines(sentence, k, pattern)) defined.insert(term);
      if (!first_use.contains(term)) {
        first_use.emplace(term, Use{sentence.index, token.span, token.text, reason});
        order.push_back(term);
      }
    }
  }

  std::vector<ErrorInstance> out;
  for (const std::string& term : order) {
    if (defined.contains(term)) continue;
    const Use& use = first_use.at(term);
    out.push_back(make_error(ErrorClass::UnexplainedTerm, use.sentence, use.span,
                             "'" + use.surface + "' (" + use.reason + ") is never explained"));
  }
  return out;
}

std::vector<ErrorInstance> detect_errors(const Document& document, const LintResources& resources) {
  const LintConfig& config = resources.config;
  auto out = detect_agreement_errors(document, resources.morph);
  if (config.synonym_groups) {
    auto terms = detect_term_inconsistency(document, *config.synonym_groups);
    out.insert(out.end(), terms.begin(), terms.end());
  }
  const FrequencyLexicon* frequency =
      config.frequency_lexicon ? &*config.frequency_lexicon : nullptr;
  auto unexplained =
      detect_unexplained_terms(document, config.glossary, frequency, config.rare_rank_threshold);
  out.insert(out.end(), unexplained.begin(), unexplained.end());
  sort_errors(out);
  return out;
}

AuditHook make_audit_hook(const LintResources& resources) {
  auto shared = std::make_shared<const LintResources>(resources);
  return [shared](const Document& document) { return detect_errors(document, *shared); };
}

bool ComplianceDelta::is_zero() const {
  return std::all_of(rows.begin(), rows.end(), [](const GuidelineCounts& row) {
    return row.gold_violations == row.candidate_violations &&
           row.gold_advisories == row.candidate_advisories;
  });
}

ComplianceDelta compare_compliance(const Document& gold, const Document& candidate,
                                   const LintConfig& config, const MorphLexicon& lexicon) {
  ComplianceDelta delta;
  for (const Diagnostic& d : lint_document(gold, config, lexicon)) {
    auto& row = delta.rows[guideline_index(d.guideline)];
    ++(d.severity == Severity::Violation ? row.gold_violations : row.gold_advisories);
  }
  for (const Diagnostic& d : lint_document(candidate, config, lexicon)) {
    auto& row = delta.rows[guideline_index(d.guideline)];
    ++(d.severity == Severity::Violation ? row.candidate_violations : row.candidate_advisories);
  }
  return delta;
}

nlohmann::ordered_json to_json(const ComplianceDelta& delta) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < kGuidelineCount; ++i) {
    const GuidelineCounts& row = delta.rows[i];
    rows.push_back({{"guideline", to_string(guideline_at(i))},
                    {"gold_violations", row.gold_violations},
                    {"gold_advisories", row.gold_advisories},
                    {"candidate_violations", row.candidate_violations},
                    {"candidate_advisories", row.candidate_advisories},
                    {"net_delta", row.net_delta()}});
  }
  return rows;
}

}  // namespace lefa
