#include "lefa/linter.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lefa/error.hpp"
#include "lefa/unicode.hpp"

namespace lefa {

namespace {

using G = Guideline;

const std::set<std::string> kRelatives{"que", "quien", "quienes", "cual", "cuales", "donde",
                                       "cuando", "como", "cuyo", "cuya", "cuyos", "cuyas"};

const std::set<std::string> kCoordinators{"y", "e", "o", "u", "ni"};

Severity severity_for(Guideline id) {
  return guideline_info(id).checkability == Checkability::Mechanical ? Severity::Violation
                                                                     : Severity::Advisory;
}

bool is_url(std::string_view text) {
  return text.find("://") != std::string_view::npos || text.starts_with("www.");
}

bool has_digit(std::string_view text) {
  return std::any_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t letter_count(std::string_view text) {
  std::size_t n = 0;
  for (char32_t c : unicode::to_u32(text)) n += unicode::is_letter(c) ? 1 : 0;
  return n;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingResource, "cannot read " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    std::string entry = unicode::collapse_whitespace(unicode::normalize_nfc(line));
    if (entry.empty() || entry.front() == '#') continue;
    lines.push_back(std::move(entry));
  }
  return lines;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingResource, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// Per-sentence view with lowercase forms and the index of the first word.
struct SentenceView {
  const Sentence& sentence;
  std::vector<std::string> lower;
  std::size_t first_word = 0;

  explicit SentenceView(const Sentence& s) : sentence(s) {
    for (const Token& t : s.tokens) lower.push_back(unicode::to_lower(t.text));
    while (first_word < s.tokens.size() && s.tokens[first_word].kind == TokenKind::Punctuation) {
      ++first_word;
    }
  }
  std::size_t size() const { return lower.size(); }
  const Token& token(std::size_t i) const { return sentence.tokens[i]; }
  Span cover(std::size_t first, std::size_t last) const {
    return {token(first).span.start, token(last).span.end};
  }
  // Capitalized words after the first one are taken as proper nouns.
  bool is_proper_noun(std::size_t i) const {
    return i != first_word && unicode::starts_with_upper(token(i).text);
  }
};

class SentenceLinter {
 public:
  SentenceLinter(const Sentence& sentence, const LintConfig& config, const MorphLexicon& lexicon,
                 std::string_view doc_id)
      : view_(sentence), config_(config), lexicon_(lexicon), doc_id_(doc_id) {}

  std::vector<Diagnostic> run() {
    if (on(G::G1)) check_capitals();
    if (on(G::G2) || on(G::G21)) check_clauses();
    if (on(G::G3)) check_semicolons();
    if (on(G::G4) || on(G::G6)) check_rare_words();
    if (on(G::G7)) emit_spans(G::G7, detect_superlative(view_.sentence), "superlative");
    if (on(G::G8)) check_foreign();
    if (on(G::G9)) check_abbreviations();
    if (on(G::G10)) check_idioms();
    if (on(G::G12)) check_complexity();
    if (on(G::G13) || on(G::G14)) check_tenses();
    if (on(G::G15)) emit_spans(G::G15, detect_passive(view_.sentence, lexicon_), "passive voice");
    if (on(G::G17)) {
      emit_spans(G::G17, detect_impersonal(view_.sentence, lexicon_), "impersonal construction");
    }
    if (on(G::G18)) {
      emit_spans(G::G18, detect_verb_chain(view_.sentence, lexicon_), "consecutive verbs");
    }
    if (on(G::G19)) check_initial_negation();
    if (on(G::G20)) {
      emit_spans(G::G20, detect_double_negation(view_.sentence, lexicon_), "double negation");
    }
    return std::move(out_);
  }

 private:
  bool on(Guideline id) const { return config_.enabled.contains(id); }

  void emit(Guideline id, Span span, std::string message) {
    Diagnostic d;
    d.guideline = id;
    d.severity = severity_for(id);
    d.doc_id = std::string(doc_id_);
    d.sentence = view_.sentence.index;
    d.span = span;
    d.message = std::move(message);
    d.evidence = span_text(view_.sentence, span);
    out_.push_back(std::move(d));
  }

  void emit_spans(Guideline id, const std::vector<Span>& spans, std::string_view message) {
    for (const Span& span : spans) emit(id, span, std::string(message));
  }

  void check_capitals() {
    for (const Span& span : capital_spans(view_.sentence, config_)) {
      emit(G::G1, span, "words in capital letters that are not acronyms");
    }
  }

  void check_clauses() {
    std::vector<std::size_t> commas;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (view_.token(i).kind == TokenKind::Punctuation && view_.lower[i] == ",") {
        commas.push_back(i);
      }
    }
    if (static_cast<int>(commas.size()) <= config_.max_commas) return;
    for (std::size_t comma : commas) {
      std::size_t first = comma + 1;
      if (first >= view_.size()) continue;
      if (kRelatives.contains(view_.lower[first]) ||
          config_.subordinators.contains(view_.lower[first])) {
        continue;
      }
      std::size_t last = first;
      bool finite = false;
      bool scanning = true;
      for (std::size_t i = first; i < view_.size(); ++i) {
        if (view_.token(i).kind == TokenKind::Punctuation &&
            (view_.lower[i] == "," || view_.lower[i] == ";" || view_.lower[i] == "." ||
             view_.lower[i] == ":")) {
          break;
        }
        last = i;
        // A verb after a coordinating conjunction belongs to a list item or a
        // coordinated clause, neither of which is a comma splice.
        if (!finite && kCoordinators.contains(view_.lower[i])) scanning = false;
        if (scanning && classify_in_context(view_.sentence, i, lexicon_).any_finite()) {
          finite = true;
        }
      }
      if (!finite) continue;
      const Span span = view_.cover(first, last);
      if (on(G::G2)) emit(G::G2, span, "independent clause joined by a comma; use a period");
      if (on(G::G21)) emit(G::G21, span, "more than one main idea in the sentence");
      return;
    }
  }

  void check_semicolons() {
    const std::u32string text = unicode::to_u32(view_.sentence.text);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == U';') emit(G::G3, {i, i + 1}, "semicolon");
    }
  }

  bool skip_vocabulary(std::size_t i) const {
    const Token& t = view_.token(i);
    return t.kind != TokenKind::Word || is_url(t.text) || has_digit(t.text) ||
           view_.is_proper_noun(i) || is_function_word(view_.lower[i]);
  }

  // Conjugated forms are rarer than their infinitive, so a verb form counts
  // as common when its lemma is.
  std::optional<int> effective_rank(const std::string& lower) const {
    const FrequencyLexicon& frequency = *config_.frequency_lexicon;
    std::optional<int> rank = frequency.rank(lower);
    if (const auto lemma = lexicon_.lemma(lower)) {
      if (const auto lemma_rank = frequency.rank(*lemma)) {
        rank = rank ? std::min(*rank, *lemma_rank) : *lemma_rank;
      }
    }
    return rank;
  }

  void check_rare_words() {
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (skip_vocabulary(i) || in_glossary(view_.lower[i])) continue;
      const auto rank = effective_rank(view_.lower[i]);
      if (rank && *rank <= config_.rare_rank_threshold) continue;
      const Span span = view_.token(i).span;
      const std::string why =
          rank ? "uncommon word (rank " + std::to_string(*rank) + ")" : "word not in lexicon";
      if (on(G::G4)) emit(G::G4, span, why);
      if (on(G::G6)) emit(G::G6, span, why + " without a glossary entry");
    }
  }

  bool in_glossary(const std::string& lower) const {
    if (config_.glossary.contains(lower)) return true;
    for (const auto& [term, definition] : config_.glossary) {
      if (inflections(term).contains(lower)) return true;
    }
    return false;
  }

  void check_foreign() {
    const FrequencyLexicon& lexicon = *config_.frequency_lexicon;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (skip_vocabulary(i)) continue;
      const std::string& w = view_.lower[i];
      if (lexicon.contains(w) || config_.foreign_allowlist.contains(w)) continue;
      if (looks_foreign(w)) emit(G::G8, view_.token(i).span, "word from another language");
    }
  }

  void check_abbreviations() {
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (view_.token(i).kind == TokenKind::AbbreviationCandidate) {
        emit(G::G9, view_.token(i).span, "abbreviation");
      }
    }
  }

  void check_idioms() {
    for (const std::string& idiom : *config_.idiom_list) {
      std::vector<std::string> words;
      std::istringstream in(unicode::to_lower(idiom));
      for (std::string w; in >> w;) words.push_back(w);
      if (words.empty() || words.size() > view_.size()) continue;
      for (std::size_t i = 0; i + words.size() <= view_.size(); ++i) {
        if (std::equal(words.begin(), words.end(), view_.lower.begin() + i)) {
          emit(G::G10, view_.cover(i, i + words.size() - 1), "figurative expression");
        }
      }
    }
  }

  void check_complexity() {
    const std::size_t words = word_count(view_.sentence);
    std::size_t subordinators = 0;
    for (const std::string& w : view_.lower) subordinators += config_.subordinators.contains(w);
    if (view_.size() == 0) return;
    const Span whole = view_.cover(0, view_.size() - 1);
    if (static_cast<int>(words) > config_.max_simple_sentence_words) {
      emit(G::G12, whole, "long sentence (" + std::to_string(words) + " words)");
    } else if (subordinators >= 2) {
      emit(G::G12, whole,
           "complex sentence (" + std::to_string(subordinators) + " subordinate clauses)");
    }
  }

  void check_tenses() {
    for (std::size_t i = 0; i < view_.size(); ++i) {
      const VerbFormSet set = classify_in_context(view_.sentence, i, lexicon_);
      if (!set.any_finite() || set.contains(VerbForm::PresentIndicative)) continue;
      const Span span = view_.token(i).span;
      if (on(G::G13) && !set.contains(VerbForm::Imperative)) {
        emit(G::G13, span, "verb not in the present indicative");
      }
      if (on(G::G14) &&
          (set.contains(VerbForm::Conditional) || set.contains(VerbForm::SubjunctivePresent) ||
           set.contains(VerbForm::SubjunctivePast))) {
        emit(G::G14, span, "conditional or subjunctive");
      }
    }
    if (on(G::G14)) {
      emit_spans(G::G14, detect_compound_forms(view_.sentence, lexicon_), "compound tense");
    }
  }

  void check_initial_negation() {
    const std::size_t i = view_.first_word;
    if (i >= view_.size() || view_.lower[i] != "no") return;
    std::size_t next = i + 1;
    if (next < view_.size()) {
      const VerbFormSet set = classify_in_context(view_.sentence, next, lexicon_);
      // Negative commands take the subjunctive; an imperative that is also a
      // present indicative ("no juega") is a plain statement.
      const bool command = set.contains(VerbForm::Imperative) &&
                           !set.contains(VerbForm::PresentIndicative);
      if (set.contains(VerbForm::Infinitive) || command ||
          set.contains(VerbForm::SubjunctivePresent)) {
        return;  // simple prohibition
      }
    }
    const Span span = next < view_.size() ? view_.cover(i, next) : view_.token(i).span;
    emit(G::G19, span, "negative sentence");
  }

  SentenceView view_;
  const LintConfig& config_;
  const MorphLexicon& lexicon_;
  std::string_view doc_id_;
  std::vector<Diagnostic> out_;
};

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.sentence, a.span.start, a.guideline) <
                            std::tie(b.sentence, b.span.start, b.guideline);
                   });
}

bool is_empty(const Document& document) {
  return std::all_of(document.sentences.begin(), document.sentences.end(),
                     [](const Sentence& s) { return s.tokens.empty(); });
}

}  // namespace

// ----------------------------------------------------------------------------

std::vector<Span> capital_spans(const Sentence& sentence, const LintConfig& config) {
  std::vector<Span> out;
  const auto& tokens = sentence.tokens;
  auto allowed = [&](const Token& t) {
    return config.acronym_allowlist.contains(t.text) ||
           config.acronym_allowlist.contains(unicode::to_upper(t.text));
  };
  for (std::size_t i = 0; i < tokens.size();) {
    if (tokens[i].kind != TokenKind::AcronymCandidate) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end + 1 < tokens.size() && tokens[end + 1].kind == TokenKind::AcronymCandidate) ++end;
    bool flagged = false;
    if (end > i) {
      for (std::size_t k = i; k <= end; ++k) flagged = flagged || !allowed(tokens[k]);
    } else {
      flagged = letter_count(tokens[i].text) > 6 && !allowed(tokens[i]);
    }
    if (flagged) out.push_back({tokens[i].span.start, tokens[end].span.end});
    i = end + 1;
  }
  return out;
}

bool looks_foreign(std::string_view lower) {
  const std::string folded = unicode::fold(lower);
  if (folded.find_first_of("kw") != std::string::npos) return true;
  for (std::string_view ending : {"ing", "tion", "sion"}) {
    if (lower.ends_with(ending)) return true;  // unaccented -sion is not Spanish
  }
  for (std::string_view cluster : {"sh", "th", "ph", "ck", "ee", "oo", "tt", "ff", "ss"}) {
    if (folded.find(cluster) != std::string::npos) return true;
  }
  if (folded.size() >= 2 && folded.back() == 'y') {
    const char before = folded[folded.size() - 2];
    if (std::string_view("aeiou").find(before) == std::string_view::npos) return true;
  }
  return false;
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Violation ? "violation" : "advisory";
}

nlohmann::ordered_json to_json(const Diagnostic& d) {
  nlohmann::ordered_json json;
  json["guideline"] = to_string(d.guideline);
  json["severity"] = to_string(d.severity);
  json["sentence"] = d.sentence;
  json["span"] = {d.span.start, d.span.end};
  json["message"] = d.message;
  json["evidence"] = d.evidence;
  return json;
}

FrequencyLexicon::FrequencyLexicon(std::unordered_map<std::string, int> ranks)
    : ranks_(std::move(ranks)) {}

FrequencyLexicon FrequencyLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingResource, "cannot read frequency lexicon " + path.string());
  std::unordered_map<std::string, int> ranks;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected word<TAB>rank", number);
    const std::string word = unicode::to_lower(unicode::normalize_nfc(line.substr(0, tab)));
    int rank = 0;
    const char* begin = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, rank);
    if (ec != std::errc() || ptr != end || rank <= 0 || word.empty()) {
      throw ParseError("invalid frequency entry: " + line, number);
    }
    auto [it, inserted] = ranks.emplace(word, rank);
    if (!inserted) it->second = std::min(it->second, rank);
  }
  return FrequencyLexicon(std::move(ranks));
}

std::optional<int> FrequencyLexicon::rank(std::string_view lower) const {
  if (auto it = ranks_.find(std::string(lower)); it != ranks_.end()) return it->second;
  return std::nullopt;
}

std::set<Guideline> LintConfig::all_rules() {
  std::set<Guideline> rules;
  for (std::size_t i = 0; i < kGuidelineCount; ++i) rules.insert(guideline_at(i));
  return rules;
}

void LintConfig::validate() const {
  if (rare_rank_threshold <= 0) {
    throw Error(ErrorKind::InvalidArgument, "rare_rank_threshold must be positive");
  }
  if (max_simple_sentence_words <= 0) {
    throw Error(ErrorKind::InvalidArgument, "max_simple_sentence_words must be positive");
  }
  if (max_commas < 0) throw Error(ErrorKind::InvalidArgument, "max_commas must not be negative");
}

void LintConfig::require_resources() const {
  auto need = [&](Guideline id, bool present, std::string_view resource) {
    if (enabled.contains(id) && !present) {
      throw Error(ErrorKind::MissingResource, std::string(to_string(id)) + " is enabled but the " +
                                                  std::string(resource) + " is missing");
    }
  };
  for (Guideline id : {G::G4, G::G6, G::G8}) need(id, frequency_lexicon.has_value(), "frequency lexicon");
  need(G::G10, idiom_list.has_value(), "idiom list");
  need(G::G11, synonym_groups.has_value(), "synonym groups");
}

LintResources LintResources::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::MissingResource, "resource directory not found: " + dir.string());
  }
  LintResources resources;
  LintConfig& config = resources.config;
  auto file = [&](const char* name) -> std::optional<std::filesystem::path> {
    auto path = dir / name;
    if (std::filesystem::exists(path)) return path;
    return std::nullopt;
  };

  if (auto path = file("frequency.tsv")) config.frequency_lexicon = FrequencyLexicon::load(*path);
  if (auto path = file("glossary.json")) {
    const auto json = read_json(*path);
    if (!json.is_object()) throw ParseError(path->string() + ": expected an object");
    for (const auto& [term, definition] : json.items()) {
      if (!definition.is_string()) throw ParseError(path->string() + ": definitions must be strings");
      config.glossary[unicode::to_lower(unicode::normalize_nfc(term))] = definition.get<std::string>();
    }
  }
  if (auto path = file("synonyms.json")) {
    const auto json = read_json(*path);
    std::vector<std::set<std::string>> groups;
    if (!json.is_array()) throw ParseError(path->string() + ": expected an array of arrays");
    for (const auto& group : json) {
      if (!group.is_array()) throw ParseError(path->string() + ": expected an array of arrays");
      std::set<std::string> members;
      for (const auto& member : group) {
        if (!member.is_string()) throw ParseError(path->string() + ": members must be strings");
        members.insert(unicode::to_lower(unicode::normalize_nfc(member.get<std::string>())));
      }
      groups.push_back(std::move(members));
    }
    config.synonym_groups = std::move(groups);
  }
  if (auto path = file("idioms.txt")) config.idiom_list = read_lines(*path);
  if (auto path = file("acronyms.txt")) {
    for (auto& line : read_lines(*path)) config.acronym_allowlist.insert(std::move(line));
  }
  if (auto path = file("foreign_allowlist.txt")) {
    for (auto& line : read_lines(*path)) config.foreign_allowlist.insert(unicode::to_lower(line));
  }
  if (auto path = file("morph_lexicon.json")) resources.morph = MorphLexicon::load(*path);
  if (auto path = file("abbreviations.txt")) {
    resources.segmenter.abbreviation_lexicon = SegmenterConfig::load_abbreviations(*path);
  }
  return resources;
}

std::vector<Diagnostic> lint_sentence(const Sentence& sentence, const LintConfig& config,
                                      const MorphLexicon& lexicon, std::string_view doc_id) {
  config.validate();
  config.require_resources();
  auto out = SentenceLinter(sentence, config, lexicon, doc_id).run();
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> lint_document(const Document& document, const LintConfig& config,
                                      const MorphLexicon& lexicon) {
  config.validate();
  config.require_resources();
  std::vector<Diagnostic> out;
  for (const Sentence& sentence : document.sentences) {
    auto diagnostics = SentenceLinter(sentence, config, lexicon, document.id).run();
    out.insert(out.end(), std::make_move_iterator(diagnostics.begin()),
               std::make_move_iterator(diagnostics.end()));
  }
  if (config.enabled.contains(G::G11)) {
    for (const SynonymConflict& conflict :
         find_synonym_conflicts(document, *config.synonym_groups)) {
      // Anchor at the first use of the second distinct member.
      const std::string& second = conflict.members_found[1];
      auto anchor = std::find_if(conflict.occurrences.begin(), conflict.occurrences.end(),
                                 [&](const TermOccurrence& o) { return o.member == second; });
      std::string listing;
      for (const TermOccurrence& o : conflict.occurrences) {
        if (!listing.empty()) listing += ", ";
        listing += o.surface + " (sentence " + std::to_string(o.sentence) + ")";
      }
      Diagnostic d;
      d.guideline = G::G11;
      d.severity = severity_for(G::G11);
      d.doc_id = document.id;
      d.sentence = anchor->sentence;
      d.span = anchor->span;
      d.message = "different words for the same referent: " + listing;
      for (const std::string& member : conflict.members_found) {
        if (!d.evidence.empty()) d.evidence += ", ";
        d.evidence += member;
      }
      out.push_back(std::move(d));
    }
  }
  sort_diagnostics(out);
  return out;
}

bool has_violations(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Violation; });
}

std::set<std::string> inflections(std::string_view lemma) {
  const std::string base = unicode::to_lower(unicode::normalize_nfc(lemma));
  std::set<std::string> forms{base};
  if (base.empty()) return forms;
  const std::u32string text = unicode::to_u32(base);
  const char32_t last = text.back();
  const std::u32string_view vowels = U"aeiouáéó";
  if (vowels.find(last) != std::u32string_view::npos) {
    forms.insert(base + "s");
  } else if (last == U'z') {
    forms.insert(unicode::to_utf8(std::u32string_view(text).substr(0, text.size() - 1)) + "ces");
  } else if (last == U's' || last == U'x') {
    // crisis, tórax: invariant
  } else {
    // Drop the accent of a stressed final syllable: acción -> acciones.
    std::u32string stem = text;
    if (stem.size() >= 2) {
      char32_t& v = stem[stem.size() - 2];
      switch (v) {
        case U'á': v = U'a'; break;
        case U'é': v = U'e'; break;
        case U'í': v = U'i'; break;
        case U'ó': v = U'o'; break;
        case U'ú': v = U'u'; break;
        default: break;
      }
    }
    forms.insert(unicode::to_utf8(stem) + "es");
  }
  return forms;
}

std::vector<SynonymConflict> find_synonym_conflicts(
    const Document& document, const std::vector<std::set<std::string>>& groups) {
  std::vector<SynonymConflict> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<std::pair<std::string, std::set<std::string>>> members;
    for (const std::string& member : groups[g]) members.emplace_back(member, inflections(member));
    SynonymConflict conflict;
    conflict.group_index = g;
    for (const Sentence& sentence : document.sentences) {
      for (const Token& token : sentence.tokens) {
        if (token.kind != TokenKind::Word) continue;
        const std::string lower = unicode::to_lower(token.text);
        for (const auto& [member, forms] : members) {
          if (!forms.contains(lower)) continue;
          conflict.occurrences.push_back({sentence.index, token.span, token.text, member});
          if (std::find(conflict.members_found.begin(), conflict.members_found.end(), member) ==
              conflict.members_found.end()) {
            conflict.members_found.push_back(member);
          }
          break;
        }
      }
    }
    if (conflict.members_found.size() >= 2) out.push_back(std::move(conflict));
  }
  return out;
}

std::set<Guideline> ApplicabilityReport::not_applicable() const {
  std::set<Guideline> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].status == Applicability::NotApplicable) out.insert(guideline_at(i));
  }
  return out;
}

std::size_t ApplicabilityReport::applicable_count() const {
  return kGuidelineCount - not_applicable().size();
}

ApplicabilityReport applicability(const Document& document, const LintConfig& config,
                                  const MorphLexicon& lexicon) {
  ApplicabilityReport report;
  for (std::size_t i = 0; i < kGuidelineCount; ++i) {
    report.entries[i].checkability = guideline_info(guideline_at(i)).checkability;
  }
  auto set = [&](Guideline id, bool applicable, std::string reason) {
    auto& entry = report.entries[guideline_index(id)];
    entry.status = applicable ? Applicability::Applicable : Applicability::NotApplicable;
    entry.reason = std::move(reason);
  };

  if (is_empty(document)) {
    for (std::size_t i = 0; i < kGuidelineCount; ++i) set(guideline_at(i), false, "empty document");
    return report;
  }

  for (std::size_t i = 0; i < kGuidelineCount; ++i) {
    const Guideline id = guideline_at(i);
    set(id, true,
        report.entries[i].checkability == Checkability::Unchecked
            ? "applies to every text; not mechanically assessable"
            : "applies to every text");
  }

  // Trigger-based rules use the same predicates as the corresponding lint rules.
  auto first_trigger = [&](auto&& predicate) -> std::optional<std::size_t> {
    for (const Sentence& s : document.sentences) {
      if (predicate(s)) return s.index;
    }
    return std::nullopt;
  };
  auto trigger = [&](Guideline id, auto&& predicate, std::string_view absent) {
    if (auto where = first_trigger(predicate)) {
      set(id, true, "trigger found in sentence " + std::to_string(*where));
    } else {
      set(id, false, std::string(absent));
    }
  };
  trigger(G::G1, [&](const Sentence& s) { return !capital_spans(s, config).empty(); },
          "no words in capital letters other than acronyms");
  trigger(G::G3, [](const Sentence& s) { return s.text.find(';') != std::string::npos; },
          "no semicolons");
  trigger(G::G7, [](const Sentence& s) { return !detect_superlative(s).empty(); },
          "no superlatives");
  trigger(G::G9,
          [](const Sentence& s) {
            return std::any_of(s.tokens.begin(), s.tokens.end(), [](const Token& t) {
              return t.kind == TokenKind::AbbreviationCandidate;
            });
          },
          "no abbreviations");
  trigger(G::G16, [&](const Sentence& s) { return !detect_imperatives(s, lexicon).empty(); },
          "no imperative forms");
  return report;
}

nlohmann::ordered_json to_json(const ApplicabilityReport& report) {
  nlohmann::ordered_json json;
  json["applicable_count"] = report.applicable_count();
  json["guidelines"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < kGuidelineCount; ++i) {
    const auto& entry = report.entries[i];
    nlohmann::ordered_json row;
    row["guideline"] = to_string(guideline_at(i));
    row["status"] =
        entry.status == Applicability::Applicable ? "applicable" : "not_applicable";
    row["reason"] = entry.reason;
    row["checkability"] = to_string(entry.checkability);
    json["guidelines"].push_back(std::move(row));
  }
  return json;
}

}  // namespace lefa
