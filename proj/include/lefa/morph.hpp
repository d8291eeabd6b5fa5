#pragma once

#include <bitset>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lefa/textmodel.hpp"

namespace lefa {

enum class VerbForm : std::uint8_t {
  PresentIndicative,
  FutureIndicative,
  PastIndicative,
  Conditional,
  SubjunctivePresent,
  SubjunctivePast,
  Imperative,
  Infinitive,
  Gerund,
  Participle,
  CompoundForm,
  Unknown,
};

inline constexpr std::size_t kVerbFormCount = 12;

std::string_view to_string(VerbForm form);
std::optional<VerbForm> parse_verb_form(std::string_view text);

/// Set of candidate classes for one surface form. Ambiguity is represented by
/// several members; "nothing matched" is {Unknown}.
class VerbFormSet {
 public:
  VerbFormSet() = default;
  VerbFormSet(std::initializer_list<VerbForm> forms);

  void insert(VerbForm form) { bits_.set(static_cast<std::size_t>(form)); }
  void merge(const VerbFormSet& other) { bits_ |= other.bits_; }
  bool contains(VerbForm form) const { return bits_.test(static_cast<std::size_t>(form)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::vector<VerbForm> members() const;

  bool is_unknown() const { return bits_.none() || (size() == 1 && contains(VerbForm::Unknown)); }
  /// Any personal (conjugated) form.
  bool any_finite() const;
  /// Finite, infinitive or gerund: what counts in a chain of verbs.
  bool is_chain_verb() const;

  bool operator==(const VerbFormSet&) const = default;

 private:
  std::bitset<kVerbFormCount> bits_;
};

/// Prenominal agreement exceptions for determiner-noun checks.
struct AgreementLexicon {
  std::set<std::string> invariant_nouns;      // same form in singular and plural
  std::set<std::string> el_feminine_nouns;    // feminine nouns taking "el"/"un" (el agua)
  std::set<std::string> masculine_a_nouns;    // masculine nouns ending in -a (el día)
  std::set<std::string> feminine_o_nouns;     // feminine nouns ending in -o (la mano)
  std::set<std::string> common_gender_nouns;  // el/la deportista
  std::set<std::string> prenominal_adjectives;
};

/// Mirror of the lexicon resource file.
struct LexiconData {
  std::map<std::string, VerbFormSet> irregular_forms;
  /// surface -> infinitive for irregular forms.
  std::map<std::string, std::string> lemmas;
  std::set<std::string> modal_infinitives{"deber", "querer", "saber", "poder"};
  std::set<std::string> negation_words{"no",      "nunca",   "jamás",   "nada",   "nadie",
                                       "ninguno", "ninguna", "ningún", "tampoco"};
  std::set<std::string> haber_forms;
  std::set<std::string> ser_forms;
  /// Regular infinitives expanded into their full paradigms.
  std::vector<std::string> regular_verbs;
  AgreementLexicon agreement;
};

/// Compiled lexicon: irregular forms, expanded regular paradigms and lemma index.
class MorphLexicon {
 public:
  /// Built-in seed (modals, negation, ser and haber paradigms).
  MorphLexicon();
  explicit MorphLexicon(LexiconData data);

  /// JSON {"irregular_forms":{...},"modals":[...],"negation":[...],
  /// "ser_forms":[...],"haber_forms":[...]} plus the optional extension keys
  /// "paradigms", "regular_verbs", "non_verbs" and "agreement".
  static MorphLexicon load(const std::filesystem::path& path);
  static MorphLexicon from_json(const nlohmann::json& json);

  const LexiconData& data() const { return data_; }

  /// Irregular entries first, then generated regular forms. Keys are lowercase.
  std::optional<VerbFormSet> lookup(std::string_view lower) const;
  /// True when the form comes from the irregular lexicon or a listed paradigm.
  bool is_irregular(std::string_view lower) const;
  std::optional<std::string_view> lemma(std::string_view lower) const;

  bool is_negation(std::string_view lower) const;
  bool is_ser_form(std::string_view lower) const;
  bool is_haber_form(std::string_view lower) const;
  /// True when the form belongs to one of the modal infinitives.
  bool is_modal_form(std::string_view lower) const;

 private:
  void compile();

  LexiconData data_;
  std::unordered_map<std::string, VerbFormSet> irregular_;
  std::unordered_map<std::string, VerbFormSet> regular_;
  std::unordered_map<std::string, std::string> lemma_index_;
};

/// Expands a regular -ar/-er/-ir infinitive into surface -> classes.
std::map<std::string, VerbFormSet> conjugate_regular(std::string_view infinitive);

/// Determiners, prepositions, conjunctions, pronouns and common adverbs.
bool is_function_word(std::string_view lower);
bool is_preposition(std::string_view lower);
bool is_determiner(std::string_view lower);
bool is_adverb(std::string_view lower);

/// Heuristic plural test used by agreement and subject matching.
bool looks_plural(std::string_view lower, const AgreementLexicon& lexicon);

enum class Gender { Masculine, Feminine, Unknown };

/// Grammatical gender of a noun from its ending and the exception lists.
/// Unknown for common-gender nouns and endings that carry no gender.
Gender noun_gender(std::string_view lower, const AgreementLexicon& lexicon);

VerbFormSet classify_verb_form(const Token& token, const MorphLexicon& lexicon);
VerbFormSet classify_word(std::string_view word, const MorphLexicon& lexicon);

/// classify_verb_form adjusted by the preceding token: after a determiner the
/// word is a noun, after a preposition only an infinitive reading survives,
/// and after la/lo/los/las/le/les (article or clitic) regular present forms
/// are read as nouns.
VerbFormSet classify_in_context(const Sentence& sentence, std::size_t token_index,
                                const MorphLexicon& lexicon);

/// Detectors. Spans are relative to the sentence and cover whole tokens.
std::vector<Span> detect_passive(const Sentence& sentence, const MorphLexicon& lexicon);
std::vector<Span> detect_impersonal(const Sentence& sentence, const MorphLexicon& lexicon);
std::vector<Span> detect_compound_forms(const Sentence& sentence, const MorphLexicon& lexicon);
std::vector<Span> detect_verb_chain(const Sentence& sentence, const MorphLexicon& lexicon);
std::vector<Span> detect_negations(const Sentence& sentence, const MorphLexicon& lexicon);
std::vector<Span> detect_double_negation(const Sentence& sentence, const MorphLexicon& lexicon);
std::vector<Span> detect_superlative(const Sentence& sentence);
std::vector<Span> detect_imperatives(const Sentence& sentence, const MorphLexicon& lexicon);

}  // namespace lefa
