#include "lefa/morph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "builtin_resources.hpp"
#include "lefa/error.hpp"
#include "lefa/unicode.hpp"

namespace lefa {

namespace {

using WordSet = std::set<std::string, std::less<>>;

constexpr std::array<std::string_view, kVerbFormCount> kVerbFormNames{
    "present_indicative", "future_indicative", "past_indicative", "conditional",
    "subjunctive_present", "subjunctive_past", "imperative", "infinitive",
    "gerund", "participle", "compound_form", "unknown"};

const WordSet kArticles{"el", "la", "los", "las", "un", "una", "unos", "unas", "lo", "del", "al"};

// Determiners that can never be clitic pronouns.
const WordSet kStrictDeterminers{
    "el",       "un",       "una",      "unos",     "unas",     "del",      "al",
    "este",     "esta",     "estos",    "estas",    "ese",      "esa",      "esos",
    "esas",     "aquel",    "aquella",  "aquellos", "aquellas", "mi",       "mis",
    "tu",       "tus",      "su",       "sus",      "nuestro",  "nuestra",  "nuestros",
    "nuestras", "vuestro",  "vuestra",  "vuestros", "vuestras", "cada",     "algún",
    "alguna",   "algunos",  "algunas",  "ningún",   "ninguna",  "otro",     "otra",
    "otros",    "otras",    "cualquier", "varios",  "varias",   "mucho",    "mucha",
    "muchos",   "muchas",   "poco",     "poca",     "pocos",    "pocas",    "todo",
    "toda",     "todos",    "todas",    "tanto",    "tanta",    "tantos",   "tantas",
    "cuyo",     "cuya",     "cuyos",    "cuyas",    "dicho",    "dicha",    "dichos",
    "dichas"};

const WordSet kCliticOrArticle{"la", "las", "los", "lo", "le", "les"};

const WordSet kPrepositions{"a",     "ante",  "bajo",  "con",   "contra", "de",
                            "desde", "durante", "en",  "entre", "hacia",  "hasta",
                            "mediante", "para", "por", "según", "sin",    "sobre",
                            "tras",  "versus"};

const WordSet kConjunctions{"y",     "e",      "ni",      "o",     "u",      "pero",
                            "sino",  "que",    "porque",  "aunque", "si",    "cuando",
                            "mientras", "donde", "como",  "pues",  "conque", "cualquiera"};

const WordSet kPronouns{"yo",     "tú",       "él",       "ella",     "ello",    "nosotros",
                        "nosotras", "vosotros", "vosotras", "ellos",  "ellas",   "usted",
                        "ustedes", "me",      "te",       "se",       "nos",     "os",
                        "le",     "les",      "mí",       "ti",       "sí",      "conmigo",
                        "contigo", "consigo", "quien",    "quienes",  "cual",    "cuales",
                        "qué",    "quién",    "quiénes",  "cuál",     "cuáles",  "cómo",
                        "dónde",  "cuándo",   "cuánto",   "cuánta",   "cuántos", "cuántas",
                        "esto",   "eso",      "aquello",  "algo",     "alguien", "nada",
                        "nadie",  "ninguno",  "alguno",   "uno",      "mío",     "tuyo",
                        "suyo"};

const WordSet kAdverbs{"no",       "sí",       "ya",      "muy",      "más",      "menos",
                       "también",  "tampoco",  "nunca",   "jamás",    "siempre",  "aquí",
                       "allí",     "ahí",      "acá",     "allá",     "hoy",      "ayer",
                       "mañana",   "ahora",    "antes",   "después",  "luego",    "bien",
                       "mal",      "así",      "solo",    "sólo",     "casi",     "aún",
                       "aun",      "todavía",  "tan",     "quizás",   "quizá",    "además",
                       "incluso",  "entonces", "pronto",  "tarde",    "temprano", "arriba",
                       "abajo",    "dentro",   "fuera",   "cerca",    "lejos",    "delante",
                       "detrás",   "atrás",    "encima",  "debajo",   "bastante", "demasiado",
                       "apenas",   "mucho",    "poco",    "nada",     "donde",    "adonde"};

const WordSet kClitics{"me", "te", "se", "nos", "lo", "la", "los", "las", "le", "les"};

const WordSet kSubjectPronounsSingular{"él", "ella", "usted", "esto", "eso", "aquello", "quien"};
const WordSet kSubjectPronounsPlural{"ellos", "ellas", "ustedes", "quienes"};

// Stems of irregular futures and conditionals, without the person ending.
constexpr std::array<std::string_view, 14> kIrregularFutureStems{
    "podr", "tendr", "habr", "har", "dir", "sabr", "querr", "pondr",
    "vendr", "saldr", "valdr", "cabr", "dispondr", "mantendr"};

bool contains(const WordSet& set, std::string_view word) { return set.find(word) != set.end(); }

bool ends_with(std::string_view word, std::string_view suffix) { return word.ends_with(suffix); }

std::size_t cp_length(std::string_view word) { return unicode::length(word); }

std::string_view drop_suffix(std::string_view word, std::string_view suffix) {
  return word.substr(0, word.size() - suffix.size());
}

bool has_accent(std::string_view word) {
  for (std::string_view accented : {"á", "é", "í", "ó", "ú"}) {
    if (word.find(accented) != std::string_view::npos) return true;
  }
  return false;
}

// Removes acute accents only (ñ and ü are kept).
std::string strip_accents(std::string_view word) {
  std::string out(word);
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kPairs{{
      {"á", "a"}, {"é", "e"}, {"í", "i"}, {"ó", "o"}, {"ú", "u"}}};
  for (const auto& [accented, plain] : kPairs) {
    for (auto pos = out.find(accented); pos != std::string::npos; pos = out.find(accented, pos)) {
      out.replace(pos, accented.size(), plain);
    }
  }
  return out;
}

bool is_infinitive_shape(std::string_view word) {
  return ends_with(word, "ar") || ends_with(word, "er") || ends_with(word, "ir") ||
         ends_with(word, "ír");
}

// ----------------------------------------------------------------------------
// Regular paradigm generation

enum class StemChange { None, IE, UE, I, ZC };

StemChange parse_change(std::string_view text) {
  if (text.empty()) return StemChange::None;
  if (text == "ie") return StemChange::IE;
  if (text == "ue") return StemChange::UE;
  if (text == "i") return StemChange::I;
  if (text == "zc") return StemChange::ZC;
  throw Error(ErrorKind::InvalidArgument, "unknown stem change ':" + std::string(text) + "'");
}

bool is_ascii_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

class Conjugator {
 public:
  Conjugator(std::string_view infinitive, StemChange change) : change_(change) {
    if (cp_length(infinitive) < 3 || !is_infinitive_shape(infinitive) || ends_with(infinitive, "ír")) {
      throw Error(ErrorKind::InvalidArgument,
                  "not a regular infinitive: " + std::string(infinitive));
    }
    infinitive_ = std::string(infinitive);
    stem_ = infinitive_.substr(0, infinitive_.size() - 2);
    class_ = infinitive_[infinitive_.size() - 2];
  }

  std::map<std::string, VerbFormSet> run() {
    using V = VerbForm;
    if (class_ == 'a') {
      person(V::PresentIndicative, {"o", "as", "a", "amos", "áis", "an"}, kStrongPresent);
      person(V::SubjunctivePresent, {"e", "es", "e", "emos", "éis", "en"}, kStrongPresent);
      person(V::PastIndicative, {"é", "aste", "ó", "amos", "asteis", "aron"}, kNone);
      person(V::PastIndicative, {"aba", "abas", "aba", "ábamos", "abais", "aban"}, kNone);
      person(V::SubjunctivePast, {"ara", "aras", "ara", "áramos", "arais", "aran"}, kNone);
      person(V::SubjunctivePast, {"ase", "ases", "ase", "ásemos", "aseis", "asen"}, kNone);
      add(join(strong_stem(), "a"), V::Imperative);  // tú, same as the 3sg present
      add(join(stem_, "ad"), V::Imperative);
      add(join(stem_, "ando"), V::Gerund);
      for (const char* e : {"ado", "ada", "ados", "adas"}) add(join(stem_, e), V::Participle);
    } else {
      const bool is_ir = class_ == 'i';
      person(V::PresentIndicative,
             is_ir ? Endings{"o", "es", "e", "imos", "ís", "en"}
                   : Endings{"o", "es", "e", "emos", "éis", "en"},
             kStrongPresent);
      const Mask subj_weak = is_ir ? kWeakSubjunctive : kNone;
      person(V::SubjunctivePresent, {"a", "as", "a", "amos", "áis", "an"}, kStrongPresent,
             subj_weak);
      person(V::PastIndicative, {"í", "iste", "ió", "imos", "isteis", "ieron"}, kNone,
             is_ir ? kWeakPreterite : kNone);
      person(V::PastIndicative, {"ía", "ías", "ía", "íamos", "íais", "ían"}, kNone);
      const Mask past_weak = is_ir ? kAll : kNone;
      person(V::SubjunctivePast, {"iera", "ieras", "iera", "iéramos", "ierais", "ieran"}, kNone,
             past_weak);
      person(V::SubjunctivePast, {"iese", "ieses", "iese", "iésemos", "ieseis", "iesen"}, kNone,
             past_weak);
      add(join(strong_stem(), "e"), V::Imperative);
      add(join(stem_, is_ir ? "id" : "ed"), V::Imperative);
      add(join(is_ir ? weak_stem() : stem_, "iendo"), V::Gerund);
      for (const char* e : {"ido", "ida", "idos", "idas"}) add(join(stem_, e), V::Participle);
    }
    for (const char* e : {"é", "ás", "á", "emos", "éis", "án"}) {
      add(infinitive_ + e, V::FutureIndicative);
    }
    for (const char* e : {"ía", "ías", "ía", "íamos", "íais", "ían"}) {
      add(infinitive_ + e, V::Conditional);
    }
    add(infinitive_, V::Infinitive);
    return std::move(out_);
  }

 private:
  using Endings = std::array<const char*, 6>;
  using Mask = std::array<bool, 6>;
  static constexpr Mask kNone{false, false, false, false, false, false};
  static constexpr Mask kAll{true, true, true, true, true, true};
  static constexpr Mask kStrongPresent{true, true, true, false, false, true};
  static constexpr Mask kWeakSubjunctive{false, false, false, true, true, false};
  static constexpr Mask kWeakPreterite{false, false, true, false, false, true};

  void add(const std::string& form, VerbForm cls) { out_[form].insert(cls); }

  void person(VerbForm cls, const Endings& endings, const Mask& strong,
              const Mask& weak = kNone) {
    for (std::size_t i = 0; i < endings.size(); ++i) {
      std::string stem = stem_;
      if (strong[i]) {
        stem = strong_stem();
      } else if (weak[i]) {
        stem = weak_stem();
      }
      add(join(stem, endings[i]), cls);
    }
  }

  // Diphthong or vowel change in stressed-stem forms.
  std::string strong_stem() const {
    switch (change_) {
      case StemChange::IE: return replace_last(stem_, 'e', "ie");
      case StemChange::UE: {
        std::string out = replace_last(stem_, 'o', "ue");
        return out != stem_ ? out : replace_last(stem_, 'u', "ue");
      }
      case StemChange::I: return replace_last(stem_, 'e', "i");
      default: return stem_;
    }
  }

  // e>i, o>u in the weak forms of stem-changing -ir verbs.
  std::string weak_stem() const {
    if (class_ != 'i') return stem_;
    switch (change_) {
      case StemChange::IE:
      case StemChange::I: return replace_last(stem_, 'e', "i");
      case StemChange::UE: return replace_last(stem_, 'o', "u");
      default: return stem_;
    }
  }

  static std::string replace_last(const std::string& stem, char vowel, std::string_view with) {
    const auto pos = stem.rfind(vowel);
    if (pos == std::string::npos) return stem;
    std::string out = stem;
    out.replace(pos, 1, with);
    return out;
  }

  // Stem + ending with the regular orthographic adjustments.
  std::string join(std::string stem, std::string_view ending) const {
    const bool front = ending.starts_with("e") || ending.starts_with("é");
    const bool back = ending.starts_with("o") || ending.starts_with("a") || ending.starts_with("á");
    if (class_ == 'a' && front) {
      if (stem.ends_with("c")) stem.replace(stem.size() - 1, 1, "qu");
      else if (stem.ends_with("g")) stem += "u";
      else if (stem.ends_with("z")) stem.replace(stem.size() - 1, 1, "c");
    }
    if (class_ != 'a' && back) {
      if (stem.ends_with("gu")) stem.pop_back();
      else if (stem.ends_with("g")) stem.replace(stem.size() - 1, 1, "j");
      else if (change_ == StemChange::ZC && stem.ends_with("c")) stem.replace(stem.size() - 1, 1, "zc");
    }
    const bool vowel_stem = !stem.empty() && is_ascii_vowel(stem.back());
    const bool uir = class_ == 'i' && stem.ends_with("u") && !stem.ends_with("gu") &&
                     !stem.ends_with("qu");
    std::string tail(ending);
    if (class_ != 'a' && vowel_stem && !stem.ends_with("gu") && !stem.ends_with("qu")) {
      // Unstressed i between vowels becomes y: leyó, construyendo.
      if (tail.starts_with("ie") || tail.starts_with("ió")) tail.replace(0, 1, "y");
      if (uir && (back || front)) tail = "y" + tail;
      if (!uir && (tail == "ido" || tail == "ida" || tail == "idos" || tail == "idas")) {
        tail.replace(0, 1, "í");
      }
    }
    return stem + tail;
  }

  std::string infinitive_;
  std::string stem_;
  char class_ = 'a';
  StemChange change_;
  std::map<std::string, VerbFormSet> out_;
};

std::pair<std::string, StemChange> parse_regular_entry(std::string_view entry) {
  const auto colon = entry.find(':');
  if (colon == std::string_view::npos) return {std::string(entry), StemChange::None};
  return {std::string(entry.substr(0, colon)), parse_change(entry.substr(colon + 1))};
}

// ----------------------------------------------------------------------------
// Suffix rules

bool is_future_stem(std::string_view stem) {
  for (std::string_view irregular : kIrregularFutureStems) {
    if (stem == irregular || (stem.ends_with(irregular) && cp_length(stem) > irregular.size() + 1)) {
      return true;
    }
  }
  if (!is_infinitive_shape(stem)) return false;
  return cp_length(stem) >= 4;
}

VerbFormSet suffix_rules(std::string_view word, const MorphLexicon& lexicon) {
  VerbFormSet set;
  const std::size_t length = cp_length(word);

  for (std::string_view e : {"é", "ás", "á", "emos", "éis", "án"}) {
    if (ends_with(word, e) && is_future_stem(drop_suffix(word, e))) {
      set.insert(VerbForm::FutureIndicative);
    }
  }
  for (std::string_view e : {"ía", "ías", "íamos", "íais", "ían"}) {
    if (!ends_with(word, e)) continue;
    const std::string_view stem = drop_suffix(word, e);
    const bool known = lexicon.lookup(stem).has_value() &&
                       lexicon.lookup(stem)->contains(VerbForm::Infinitive);
    const bool irregular = std::any_of(kIrregularFutureStems.begin(), kIrregularFutureStems.end(),
                                       [&](std::string_view s) { return stem.ends_with(s); });
    // -er conditionals collide with -ería nouns (batería), so they need a known lemma.
    if (known || irregular ||
        ((ends_with(stem, "ar") || ends_with(stem, "ir")) && cp_length(stem) >= 4)) {
      set.insert(VerbForm::Conditional);
    }
  }
  for (std::string_view e : {"iera", "ieras", "iéramos", "ierais", "ieran", "iese", "ieses",
                             "iésemos", "ieseis", "iesen", "yera", "yeras", "yeran", "yese",
                             "ara", "aras", "áramos", "arais", "aran", "ase", "ases",
                             "ásemos", "aseis", "asen"}) {
    if (ends_with(word, e) && cp_length(drop_suffix(word, e)) >= 3) {
      set.insert(VerbForm::SubjunctivePast);
      // -ara could also be the present of a verb whose stem ends in r (declara).
      if (e == "ara" || e == "aras" || e == "aran") set.insert(VerbForm::PresentIndicative);
    }
  }
  for (std::string_view e : {"aba", "abas", "ábamos", "abais", "aban", "aron", "ieron", "yeron",
                             "ió", "yó"}) {
    if (ends_with(word, e) && cp_length(drop_suffix(word, e)) >= 2) {
      set.insert(VerbForm::PastIndicative);
    }
  }
  if (ends_with(word, "ó") && length >= 4 && !ends_with(word, "ió")) {
    set.insert(VerbForm::PastIndicative);
  }
  for (std::string_view e : {"ado", "ada", "ados", "adas", "ido", "ida", "idos", "idas", "ído",
                             "ída", "ídos", "ídas"}) {
    // A written accent before the ending marks an adjective (rápido, válido).
    if (ends_with(word, e) && length >= 5 && cp_length(drop_suffix(word, e)) >= 2 &&
        !has_accent(drop_suffix(word, e))) {
      set.insert(VerbForm::Participle);
    }
  }
  for (std::string_view e : {"ando", "iendo", "yendo"}) {
    if (ends_with(word, e) && cp_length(drop_suffix(word, e)) >= 2) set.insert(VerbForm::Gerund);
  }
  if (is_infinitive_shape(word) && length >= 4) set.insert(VerbForm::Infinitive);
  return set;
}

// Infinitives, gerunds and imperatives with attached clitics (inscribirse,
// diciéndole, inscríbete, ponte).
VerbFormSet enclitic_rules(std::string_view word, const MorphLexicon& lexicon) {
  static constexpr std::array<std::string_view, 14> kEnclitics{
      "selos", "selas", "selo", "sela", "nos", "los", "las", "les", "me", "te", "se", "lo",
      "la", "le"};
  VerbFormSet set;
  auto examine = [&](std::string_view base, std::string_view clitic) {
    if (cp_length(base) < 2) return;
    const std::string plain = strip_accents(base);
    auto known = lexicon.lookup(base);
    if (!known) known = lexicon.lookup(plain);
    const bool risky_clitic = clitic == "te" || clitic == "me" || clitic == "nos";
    if (known && known->contains(VerbForm::Infinitive)) {
      set.insert(VerbForm::Infinitive);
    } else if (is_infinitive_shape(plain) && cp_length(plain) >= 5 && !risky_clitic &&
               !lexicon.lookup(plain)) {
      set.insert(VerbForm::Infinitive);
    }
    if ((ends_with(plain, "ando") || ends_with(plain, "iendo") || ends_with(plain, "yendo")) &&
        cp_length(plain) >= 5) {
      set.insert(VerbForm::Gerund);
    }
    if (known && known->contains(VerbForm::Imperative) && !known->contains(VerbForm::Infinitive)) {
      set.insert(VerbForm::Imperative);
    } else if (has_accent(base) && known && known->contains(VerbForm::PresentIndicative) &&
               (ends_with(plain, "a") || ends_with(plain, "e"))) {
      set.insert(VerbForm::Imperative);
    }
  };
  for (std::string_view first : kEnclitics) {
    if (!ends_with(word, first) || word.size() <= first.size()) continue;
    const std::string_view base = drop_suffix(word, first);
    examine(base, first);
    for (std::string_view second : {"me", "te", "se", "nos"}) {
      if (ends_with(base, second) && base.size() > second.size()) {
        examine(drop_suffix(base, second), second);
      }
    }
    if (!set.empty()) break;
  }
  return set;
}

// ----------------------------------------------------------------------------
// Token helpers shared by the detectors

struct TokenView {
  const Sentence& sentence;
  std::vector<std::string> lower;

  explicit TokenView(const Sentence& s) : sentence(s) {
    lower.reserve(s.tokens.size());
    for (const Token& t : s.tokens) lower.push_back(unicode::to_lower(t.text));
  }
  std::size_t size() const { return lower.size(); }
  bool is_word(std::size_t i) const { return sentence.tokens[i].kind == TokenKind::Word; }
  bool is_punct(std::size_t i) const {
    return sentence.tokens[i].kind == TokenKind::Punctuation;
  }
  Span cover(std::size_t first, std::size_t last) const {
    return {sentence.tokens[first].span.start, sentence.tokens[last].span.end};
  }
};

bool is_clause_punct(std::string_view text) {
  return text == "," || text == ";" || text == ":" || text == "." || text == "!" ||
         text == "?" || text == "…" || text.starts_with("..");
}

}  // namespace

// ----------------------------------------------------------------------------

std::string_view to_string(VerbForm form) { return kVerbFormNames[static_cast<std::size_t>(form)]; }

std::optional<VerbForm> parse_verb_form(std::string_view text) {
  for (std::size_t i = 0; i < kVerbFormNames.size(); ++i) {
    if (kVerbFormNames[i] == text) return static_cast<VerbForm>(i);
  }
  return std::nullopt;
}

VerbFormSet::VerbFormSet(std::initializer_list<VerbForm> forms) {
  for (VerbForm form : forms) insert(form);
}

std::vector<VerbForm> VerbFormSet::members() const {
  std::vector<VerbForm> out;
  for (std::size_t i = 0; i < kVerbFormCount; ++i) {
    if (bits_.test(i)) out.push_back(static_cast<VerbForm>(i));
  }
  return out;
}

bool VerbFormSet::any_finite() const {
  for (VerbForm form : {VerbForm::PresentIndicative, VerbForm::FutureIndicative,
                        VerbForm::PastIndicative, VerbForm::Conditional,
                        VerbForm::SubjunctivePresent, VerbForm::SubjunctivePast,
                        VerbForm::Imperative}) {
    if (contains(form)) return true;
  }
  return false;
}

bool VerbFormSet::is_chain_verb() const {
  return any_finite() || contains(VerbForm::Infinitive) || contains(VerbForm::Gerund);
}

std::map<std::string, VerbFormSet> conjugate_regular(std::string_view infinitive) {
  return Conjugator(infinitive, StemChange::None).run();
}

// ----------------------------------------------------------------------------
// MorphLexicon

namespace {

const MorphLexicon& seed_lexicon() {
  static const MorphLexicon seed =
      MorphLexicon::from_json(nlohmann::json::parse(detail::kMorphLexiconJson));
  return seed;
}

std::vector<std::string> string_list(const nlohmann::json& json, std::string_view key) {
  const auto& node = json.at(std::string(key));
  if (!node.is_array()) throw ParseError("morph lexicon: \"" + std::string(key) + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string()) {
      throw ParseError("morph lexicon: \"" + std::string(key) + "\" must hold strings");
    }
    out.push_back(unicode::to_lower(unicode::normalize_nfc(item.get<std::string>())));
  }
  return out;
}

std::set<std::string> string_set(const nlohmann::json& json, std::string_view key) {
  auto list = string_list(json, key);
  return {list.begin(), list.end()};
}

VerbForm verb_form_or_throw(const std::string& name) {
  auto form = parse_verb_form(name);
  if (!form) throw ParseError("morph lexicon: unknown verb form class \"" + name + "\"");
  return *form;
}

}  // namespace

MorphLexicon::MorphLexicon() : MorphLexicon(seed_lexicon()) {}

MorphLexicon::MorphLexicon(LexiconData data) : data_(std::move(data)) {
  for (const char* modal : {"deber", "querer", "saber", "poder"}) {
    if (!data_.modal_infinitives.contains(modal)) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("modal set must include deber, querer, saber and poder; missing ") +
                      modal);
    }
  }
  compile();
}

MorphLexicon MorphLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingResource, "cannot read morph lexicon " + path.string());
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return from_json(json);
}

MorphLexicon MorphLexicon::from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw ParseError("morph lexicon must be a JSON object");
  LexiconData data;
  try {
    if (json.contains("modals")) data.modal_infinitives = string_set(json, "modals");
    if (json.contains("negation")) data.negation_words = string_set(json, "negation");
    if (json.contains("ser_forms")) data.ser_forms = string_set(json, "ser_forms");
    if (json.contains("haber_forms")) data.haber_forms = string_set(json, "haber_forms");
    if (json.contains("regular_verbs")) data.regular_verbs = string_list(json, "regular_verbs");

    if (json.contains("paradigms")) {
      for (const auto& [lemma, table] : json.at("paradigms").items()) {
        for (const auto& [class_name, forms] : table.items()) {
          const VerbForm form = verb_form_or_throw(class_name);
          std::istringstream words(forms.get<std::string>());
          for (std::string surface; words >> surface;) {
            surface = unicode::to_lower(unicode::normalize_nfc(surface));
            data.irregular_forms[surface].insert(form);
            data.lemmas.emplace(surface, lemma);
          }
        }
      }
    }
    if (json.contains("irregular_forms")) {
      for (const auto& [surface, classes] : json.at("irregular_forms").items()) {
        const std::string key = unicode::to_lower(unicode::normalize_nfc(surface));
        for (const auto& name : classes) {
          data.irregular_forms[key].insert(verb_form_or_throw(name.get<std::string>()));
        }
      }
    }
    if (json.contains("non_verbs")) {
      for (const std::string& word : string_list(json, "non_verbs")) {
        data.irregular_forms[word] = VerbFormSet{VerbForm::Unknown};
      }
    }
    if (json.contains("agreement")) {
      const auto& agreement = json.at("agreement");
      auto fill = [&](const char* key, std::set<std::string>& target) {
        if (agreement.contains(key)) target = string_set(agreement, key);
      };
      fill("invariant_nouns", data.agreement.invariant_nouns);
      fill("el_feminine_nouns", data.agreement.el_feminine_nouns);
      fill("masculine_a_nouns", data.agreement.masculine_a_nouns);
      fill("feminine_o_nouns", data.agreement.feminine_o_nouns);
      fill("common_gender_nouns", data.agreement.common_gender_nouns);
      fill("prenominal_adjectives", data.agreement.prenominal_adjectives);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("morph lexicon: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw ParseError(std::string("morph lexicon: ") + e.what());
  }
  return MorphLexicon(std::move(data));
}

void MorphLexicon::compile() {
  irregular_.clear();
  regular_.clear();
  lemma_index_.clear();
  for (const auto& [surface, set] : data_.irregular_forms) irregular_[surface] = set;
  for (const auto& [surface, lemma] : data_.lemmas) lemma_index_.emplace(surface, lemma);
  for (const std::string& entry : data_.regular_verbs) {
    auto [infinitive, change] = parse_regular_entry(entry);
    for (auto& [surface, set] : Conjugator(infinitive, change).run()) {
      regular_[surface].merge(set);
      lemma_index_.emplace(surface, infinitive);
    }
  }
}

std::optional<VerbFormSet> MorphLexicon::lookup(std::string_view lower) const {
  const std::string key(lower);
  if (auto it = irregular_.find(key); it != irregular_.end()) return it->second;
  if (auto it = regular_.find(key); it != regular_.end()) return it->second;
  return std::nullopt;
}

bool MorphLexicon::is_irregular(std::string_view lower) const {
  auto it = irregular_.find(std::string(lower));
  return it != irregular_.end() && !it->second.is_unknown();
}

std::optional<std::string_view> MorphLexicon::lemma(std::string_view lower) const {
  if (auto it = lemma_index_.find(std::string(lower)); it != lemma_index_.end()) return it->second;
  return std::nullopt;
}

bool MorphLexicon::is_negation(std::string_view lower) const {
  return data_.negation_words.contains(std::string(lower));
}

bool MorphLexicon::is_ser_form(std::string_view lower) const {
  return data_.ser_forms.contains(std::string(lower));
}

bool MorphLexicon::is_haber_form(std::string_view lower) const {
  return data_.haber_forms.contains(std::string(lower));
}

bool MorphLexicon::is_modal_form(std::string_view lower) const {
  if (data_.modal_infinitives.contains(std::string(lower))) return true;
  auto lemma_of = lemma(lower);
  return lemma_of && data_.modal_infinitives.contains(std::string(*lemma_of));
}

// ----------------------------------------------------------------------------
// Word classes

bool is_preposition(std::string_view lower) { return contains(kPrepositions, lower); }

bool is_determiner(std::string_view lower) {
  return contains(kStrictDeterminers, lower) || contains(kArticles, lower);
}

bool is_adverb(std::string_view lower) {
  return contains(kAdverbs, lower) || (ends_with(lower, "mente") && cp_length(lower) > 6);
}

bool is_function_word(std::string_view lower) {
  return is_determiner(lower) || is_preposition(lower) || contains(kConjunctions, lower) ||
         contains(kPronouns, lower) || contains(kAdverbs, lower);
}

bool looks_plural(std::string_view lower, const AgreementLexicon& lexicon) {
  if (lexicon.invariant_nouns.contains(std::string(lower))) return false;
  const std::u32string text = unicode::to_u32(lower);
  if (text.size() < 3 || text.back() != U's') return false;
  const char32_t before = text[text.size() - 2];
  if (before == U'á' || before == U'é' || before == U'í' || before == U'ó' || before == U'ú') {
    return false;  // país, inglés, autobús
  }
  return before != U'i' && before != U'u';  // crisis, virus
}

Gender noun_gender(std::string_view lower, const AgreementLexicon& lexicon) {
  std::string singular(lower);
  if (looks_plural(lower, lexicon)) {
    const std::string_view without_es = lower.substr(0, lower.size() - 2);
    const bool consonant_singular =
        ends_with(lower, "es") && !without_es.empty() &&
        std::string_view("lnrdzjy").find(without_es.back()) != std::string_view::npos;
    singular = consonant_singular ? std::string(without_es)
                                  : std::string(lower.substr(0, lower.size() - 1));
  }
  const auto& lex = lexicon;
  auto listed = [&](const std::set<std::string>& set) {
    return set.contains(singular) || set.contains(std::string(lower)) ||
           set.contains(strip_accents(singular));
  };
  if (listed(lex.common_gender_nouns)) return Gender::Unknown;
  if (listed(lex.masculine_a_nouns)) return Gender::Masculine;
  if (listed(lex.feminine_o_nouns) || listed(lex.el_feminine_nouns)) return Gender::Feminine;
  const std::string folded = unicode::fold(singular);
  if (ends_with(folded, "ista") || ends_with(folded, "ante") || ends_with(folded, "ente")) {
    return Gender::Unknown;
  }
  for (std::string_view f : {"cion", "sion", "dad", "tad", "tud", "umbre", "itis", "a"}) {
    if (ends_with(folded, f)) return Gender::Feminine;
  }
  for (std::string_view m : {"o", "or", "aje", "an"}) {
    if (ends_with(folded, m)) return Gender::Masculine;
  }
  return Gender::Unknown;
}

VerbFormSet classify_word(std::string_view word, const MorphLexicon& lexicon) {
  const std::string lower = unicode::to_lower(word);
  // Prepositions and the like win over homographic verb forms (entre, bajo, como).
  if (lower.empty() || is_function_word(lower)) return {VerbForm::Unknown};
  if (auto known = lexicon.lookup(lower)) return *known;
  VerbFormSet set = suffix_rules(lower, lexicon);
  if (set.empty()) set = enclitic_rules(lower, lexicon);
  if (set.empty()) set.insert(VerbForm::Unknown);
  return set;
}

VerbFormSet classify_verb_form(const Token& token, const MorphLexicon& lexicon) {
  if (token.kind != TokenKind::Word) return {VerbForm::Unknown};
  return classify_word(token.text, lexicon);
}

VerbFormSet classify_in_context(const Sentence& sentence, std::size_t i,
                                const MorphLexicon& lexicon) {
  const Token& token = sentence.tokens.at(i);
  VerbFormSet set = classify_verb_form(token, lexicon);
  if (set.is_unknown() || i == 0) return set;
  const Token& previous = sentence.tokens[i - 1];
  if (previous.kind != TokenKind::Word) return set;
  const std::string prev = unicode::to_lower(previous.text);
  if (contains(kStrictDeterminers, prev)) return {VerbForm::Unknown};
  if (contains(kCliticOrArticle, prev)) {
    const bool marked = set.contains(VerbForm::FutureIndicative) ||
                        set.contains(VerbForm::PastIndicative) ||
                        set.contains(VerbForm::Conditional) ||
                        set.contains(VerbForm::SubjunctivePast);
    if (lexicon.is_irregular(unicode::to_lower(token.text)) || marked) return set;
    return {VerbForm::Unknown};
  }
  if (is_preposition(prev)) {
    if (set.contains(VerbForm::Infinitive)) return {VerbForm::Infinitive};
    return {VerbForm::Unknown};
  }
  return set;
}

// ----------------------------------------------------------------------------
// Detectors

std::vector<Span> detect_passive(const Sentence& sentence, const MorphLexicon& lexicon) {
  TokenView view(sentence);
  std::vector<Span> out;
  for (std::size_t i = 0; i + 1 < view.size(); ++i) {
    if (!view.is_word(i) || !lexicon.is_ser_form(view.lower[i])) continue;
    std::size_t j = i + 1;
    if (view.is_word(j) && is_adverb(view.lower[j]) && j + 1 < view.size()) ++j;
    if (view.is_word(j) &&
        classify_verb_form(sentence.tokens[j], lexicon).contains(VerbForm::Participle)) {
      out.push_back(view.cover(i, j));
    }
  }
  return out;
}

std::vector<Span> detect_compound_forms(const Sentence& sentence, const MorphLexicon& lexicon) {
  TokenView view(sentence);
  std::vector<Span> out;
  for (std::size_t i = 0; i + 1 < view.size(); ++i) {
    if (!view.is_word(i) || view.lower[i] == "hay" || !lexicon.is_haber_form(view.lower[i])) {
      continue;
    }
    std::size_t j = i + 1;
    if (view.is_word(j) && is_adverb(view.lower[j]) && j + 1 < view.size()) ++j;
    if (view.is_word(j) &&
        classify_verb_form(sentence.tokens[j], lexicon).contains(VerbForm::Participle)) {
      out.push_back(view.cover(i, j));
    }
  }
  return out;
}

std::vector<Span> detect_impersonal(const Sentence& sentence, const MorphLexicon& lexicon) {
  TokenView view(sentence);
  std::vector<Span> out;
  const AgreementLexicon& agreement = lexicon.data().agreement;

  for (std::size_t i = 0; i + 2 < view.size(); ++i) {
    if (view.lower[i] == "hay" && view.lower[i + 1] == "que" && view.is_word(i + 2) &&
        classify_verb_form(sentence.tokens[i + 2], lexicon).contains(VerbForm::Infinitive)) {
      out.push_back(view.cover(i, i + 2));
    }
  }

  for (std::size_t i = 0; i < view.size(); ++i) {
    if (view.lower[i] != "se") continue;
    std::size_t k = i + 1;
    while (k < view.size() && view.is_word(k) && contains(kClitics, view.lower[k])) ++k;
    if (k >= view.size() || !view.is_word(k) || is_function_word(view.lower[k])) continue;

    const VerbFormSet verb = classify_verb_form(sentence.tokens[k], lexicon);
    bool finite = verb.any_finite();
    if (verb.is_unknown()) {
      for (std::string_view e : {"a", "e", "an", "en", "á", "án", "ó"}) {
        if (ends_with(view.lower[k], e)) finite = true;
      }
    }
    if (!finite) continue;
    const bool verb_plural = ends_with(strip_accents(view.lower[k]), "n");

    // Clause start: punctuation, subordinators, or a conjunction right before "se".
    std::size_t start = 0;
    std::optional<std::size_t> antecedent;
    for (std::size_t j = i; j-- > 0;) {
      const bool boundary =
          (view.is_punct(j) && is_clause_punct(view.lower[j])) ||
          view.lower[j] == "que" || view.lower[j] == "cuando" || view.lower[j] == "porque" ||
          view.lower[j] == "aunque" || view.lower[j] == "si" || view.lower[j] == "mientras" ||
          view.lower[j] == "donde" || view.lower[j] == "como" ||
          (j + 1 == i && contains(kConjunctions, view.lower[j]));
      if (boundary) {
        start = j + 1;
        if ((view.lower[j] == "que" || view.lower[j] == "donde") && j > 0 && view.is_word(j - 1)) {
          antecedent = j - 1;  // relative clause: the antecedent is the subject
        }
        break;
      }
    }

    auto agrees = [&](std::size_t c) {
      const std::string& w = view.lower[c];
      if (contains(kSubjectPronounsSingular, w)) return !verb_plural;
      if (contains(kSubjectPronounsPlural, w)) return verb_plural;
      if (sentence.tokens[c].kind == TokenKind::AcronymCandidate) return !verb_plural;
      if (!view.is_word(c) || is_function_word(w) || is_adverb(w)) return false;
      if (!classify_in_context(sentence, c, lexicon).is_unknown()) return false;
      // Nouns inside a prepositional phrase are not subjects.
      std::size_t p = c;
      while (p > start) {
        const std::string& prev = view.lower[p - 1];
        if (is_determiner(prev) || sentence.tokens[p - 1].kind == TokenKind::Number ||
            agreement.prenominal_adjectives.contains(prev)) {
          --p;
        } else {
          break;
        }
      }
      if (p > start && is_preposition(view.lower[p - 1])) return false;
      return looks_plural(w, agreement) == verb_plural;
    };

    bool has_subject = antecedent && agrees(*antecedent);
    for (std::size_t c = start; c < i && !has_subject; ++c) has_subject = agrees(c);
    if (!has_subject) out.push_back(view.cover(i, k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Span> detect_verb_chain(const Sentence& sentence, const MorphLexicon& lexicon) {
  TokenView view(sentence);
  const std::vector<Span> compounds = detect_compound_forms(sentence, lexicon);
  auto in_compound = [&](std::size_t i) {
    const Span& s = sentence.tokens[i].span;
    return std::any_of(compounds.begin(), compounds.end(),
                       [&](const Span& c) { return c.contains(s); });
  };
  std::vector<bool> chain(view.size(), false);
  for (std::size_t i = 0; i < view.size(); ++i) {
    chain[i] = view.is_word(i) && !in_compound(i) &&
               classify_in_context(sentence, i, lexicon).is_chain_verb();
  }

  std::vector<Span> out;
  for (std::size_t i = 0; i < view.size();) {
    if (!chain[i]) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end + 1 < view.size() && chain[end + 1]) ++end;
    std::size_t first = i;
    // Modal periphrases (deberán disputar, quieran acceder) are exempt.
    while (first < end && lexicon.is_modal_form(view.lower[first])) ++first;
    if (end > first) out.push_back(view.cover(first, end));
    i = end + 1;
  }
  return out;
}

std::vector<Span> detect_negations(const Sentence& sentence, const MorphLexicon& lexicon) {
  TokenView view(sentence);
  std::vector<Span> out;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (view.is_word(i) && lexicon.is_negation(view.lower[i])) {
      out.push_back(sentence.tokens[i].span);
    }
  }
  return out;
}

std::vector<Span> detect_double_negation(const Sentence& sentence, const MorphLexicon& lexicon) {
  TokenView view(sentence);
  std::vector<Span> out;
  std::vector<std::size_t> clause;
  auto flush = [&] {
    if (clause.size() >= 2) out.push_back(view.cover(clause.front(), clause.back()));
    clause.clear();
  };
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (view.is_punct(i) && is_clause_punct(view.lower[i])) {
      flush();
    } else if (view.is_word(i) && lexicon.is_negation(view.lower[i])) {
      clause.push_back(i);
    }
  }
  flush();
  return out;
}

std::vector<Span> detect_superlative(const Sentence& sentence) {
  TokenView view(sentence);
  std::vector<Span> out;
  auto adjective_slot = [&](std::size_t j) {
    return j < view.size() && view.is_word(j) && !is_function_word(view.lower[j]);
  };
  auto comparative = [&](std::size_t j) {
    return j < view.size() && (view.lower[j] == "más" || view.lower[j] == "menos");
  };
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (!view.is_word(i)) continue;
    const std::string& w = view.lower[i];
    for (std::string_view e : {"ísimo", "ísima", "ísimos", "ísimas"}) {
      if (ends_with(w, e) && cp_length(w) > 6) out.push_back(sentence.tokens[i].span);
    }
    if (!contains(kArticles, w) || w == "un" || w == "una" || w == "unos" || w == "unas") continue;
    if (comparative(i + 1) && adjective_slot(i + 2)) {
      out.push_back(view.cover(i, i + 2));  // el más rápido
    } else if (adjective_slot(i + 1) && comparative(i + 2) && adjective_slot(i + 3)) {
      out.push_back(view.cover(i, i + 3));  // el equipo más rápido
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Span> detect_imperatives(const Sentence& sentence, const MorphLexicon& lexicon) {
  std::vector<Span> out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (classify_in_context(sentence, i, lexicon) == VerbFormSet{VerbForm::Imperative}) {
      out.push_back(sentence.tokens[i].span);
    }
  }
  return out;
}

}  // namespace lefa
