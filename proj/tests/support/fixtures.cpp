#include "support/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lefa/corpus.hpp"
#include "lefa/segmenter.hpp"

namespace lefa::test {

namespace {

constexpr std::string_view kWords[] = {
    "casa",    "equipo",  "partido", "jugador", "mesa",    "libro",   "texto",  "campo",
    "pelota",  "tarde",   "norma",   "lista",   "agua",    "ciudad",  "plaza",  "museo",
    "sala",    "obra",    "examen",  "prueba",  "tema",    "grupo",   "pueblo", "camino",
    "puerta",  "ventana", "parque",  "calle",   "escuela", "clase",   "verde",  "azul",
    "grande",  "claro",   "simple",  "corto",   "nuevo",   "bueno",   "juega",  "lee",
    "escribe", "mira",    "abre",    "cierra",  "busca",   "lleva",   "trae",   "pide",
};

std::string random_word(Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kWords) - 1);
  return std::string(kWords[pick(rng)]);
}

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 32);
  return word;
}

std::string words_sentence(std::size_t count, std::size_t seed) {
  std::string text;
  for (std::size_t w = 0; w < count; ++w) {
    std::string word(kWords[(seed * 31 + w * 7) % std::size(kWords)]);
    if (w == 0) word = capitalize(word);
    if (!text.empty()) text += ' ';
    text += word;
  }
  return text + ".";
}

Document build(std::string id, Role role, Theme theme, const std::string& text,
               std::size_t expected_sentences) {
  Document document = make_document(std::move(id), role, theme, text, SegmenterConfig{});
  if (document.sentences.size() != expected_sentences) {
    throw std::logic_error("fixture " + document.id + " segmented into " +
                           std::to_string(document.sentences.size()) + " sentences, expected " +
                           std::to_string(expected_sentences));
  }
  return document;
}

}  // namespace

const LintResources& shipped_resources() {
  static const LintResources resources = LintResources::load(LEFA_RESOURCE_DIR);
  return resources;
}

Document doc(std::string_view text, Role role, std::string id, Theme theme) {
  return make_document(std::move(id), role, theme, text, shipped_resources().segmenter);
}

Sentence sentence(std::string_view text) {
  Document document = doc(text);
  if (document.sentences.empty()) return Sentence{};
  return document.sentences.front();
}

TempDir::TempDir() {
  static std::random_device device;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = std::filesystem::temp_directory_path() /
                     ("lefa-test-" + std::to_string(device()) + std::to_string(attempt));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<double> random_vector(Rng& rng, std::size_t dims) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(dims);
  for (double& v : values) v = normal(rng);
  // A zero vector is astronomically unlikely; keep the fixture total anyway.
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) values[0] = 1.0;
  return values;
}

std::string synthetic_text(Rng& rng, std::size_t count, std::string_view tag) {
  std::uniform_int_distribution<std::size_t> length(2, 9);
  std::string text;
  for (std::size_t i = 0; i < count; ++i) {
    std::string sentence = capitalize(random_word(rng));
    const std::size_t n = length(rng);
    for (std::size_t w = 1; w < n; ++w) sentence += " " + random_word(rng);
    if (!tag.empty()) sentence += " " + std::string(tag) + std::to_string(i);
    sentence += ".";
    if (!text.empty()) text += ' ';
    text += sentence;
  }
  return text;
}

AlignmentInstance random_instance(Rng& rng, std::size_t max_original, std::size_t max_adapted,
                                  std::size_t dims, double tie_rate) {
  std::uniform_int_distribution<std::size_t> original_count(1, max_original);
  std::uniform_int_distribution<std::size_t> adapted_count(1, max_adapted);
  std::bernoulli_distribution tie(tie_rate);
  const std::size_t n_original = original_count(rng);
  const std::size_t n_adapted = adapted_count(rng);

  static const Theme kThemes[] = {Theme::Sport, Theme::Literature, Theme::Exhibitions,
                                  Theme::CompetitiveExaminations, Theme::Other};
  const Theme theme = kThemes[rng() % std::size(kThemes)];

  AlignmentInstance instance;
  instance.original = build("orig", Role::Original, theme, synthetic_text(rng, n_original, "o"),
                            n_original);
  instance.adapted = build("adp", Role::Adapted, theme, synthetic_text(rng, n_adapted, "a"),
                           n_adapted);
  for (std::size_t i = 0; i < n_original; ++i) {
    instance.original_vectors.emplace_back(random_vector(rng, dims));
  }
  for (std::size_t i = 0; i < n_adapted; ++i) {
    if (i > 0 && tie(rng)) {
      instance.adapted_vectors.push_back(instance.adapted_vectors[rng() % i]);
    } else {
      instance.adapted_vectors.emplace_back(random_vector(rng, dims));
    }
  }
  // Normalize up front so the store, the library and the oracle all see the
  // same unit vectors.
  for (auto& v : instance.original_vectors) v = v.normalized();
  for (auto& v : instance.adapted_vectors) v = v.normalized();
  return instance;
}

void write_store(const std::filesystem::path& path, const AlignmentInstance& instance) {
  std::ofstream out(path, std::ios::binary);
  for (std::size_t i = 0; i < instance.original.sentences.size(); ++i) {
    out << store_record(instance.original.sentences[i].text, instance.original_vectors[i]) << '\n';
  }
  for (std::size_t i = 0; i < instance.adapted.sentences.size(); ++i) {
    out << store_record(instance.adapted.sentences[i].text, instance.adapted_vectors[i]) << '\n';
  }
  if (!out) throw std::runtime_error("cannot write store " + path.string());
}

AlignedCorpus random_corpus(Rng& rng) {
  static const std::string kAwkward[] = {
      "tab\there",     "line\nbreak",        "back\\slash",      "cr\rlf\r\n",
      "\"comillas\"",  "ñandú y pingüino",   "¿Qué? ¡Sí!",       "literal \\t not a tab",
      "emoji 🙂 ok",   "trailing backslash\\", "",                "  spaces  ",
  };
  static const Theme kThemes[] = {Theme::Sport, Theme::Literature, Theme::Exhibitions,
                                  Theme::CompetitiveExaminations, Theme::Other};
  std::uniform_int_distribution<int> pair_count(0, 12);
  std::uniform_int_distribution<int> dropped_count(0, 4);
  std::uniform_real_distribution<double> score(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> index(0, 100000);

  auto text = [&] {
    std::string t = synthetic_text(rng, 1, "");
    if (rng() % 3 == 0) t += " " + kAwkward[rng() % std::size(kAwkward)];
    return t;
  };
  auto doc_id = [&] {
    std::string id = "doc-" + std::to_string(rng() % 50);
    if (rng() % 5 == 0) id += kAwkward[rng() % std::size(kAwkward)];
    return id;
  };
  auto awkward_score = [&] {
    switch (rng() % 6) {
      case 0: return 1.0;
      case 1: return -1.0;
      case 2: return 0.1 + 0.2;
      case 3: return 1e-300;
      default: return score(rng);
    }
  };

  AlignedCorpus corpus;
  const int pairs = pair_count(rng);
  for (int i = 0; i < pairs; ++i) {
    corpus.pairs.push_back({{doc_id(), index(rng)},
                            {doc_id(), index(rng)},
                            awkward_score(),
                            text(),
                            text(),
                            kThemes[rng() % std::size(kThemes)]});
  }
  const int dropped = dropped_count(rng);
  for (int i = 0; i < dropped; ++i) {
    corpus.dropped_originals.push_back({{doc_id(), index(rng)}, awkward_score()});
  }
  if (!corpus.pairs.empty()) corpus.stats = compute_stats(corpus.pairs);
  return corpus;
}

std::vector<Document> theme_shaped_corpus() {
  struct Shape {
    Theme theme;
    std::vector<std::size_t> sentences_per_text;
  };
  const Shape shapes[] = {
      {Theme::Sport, {160, 160, 160}},
      {Theme::Literature, {559, 559}},
      {Theme::Exhibitions, {36, 36}},
      {Theme::CompetitiveExaminations, {55, 54, 54, 54, 54}},
  };
  std::vector<Document> documents;
  std::size_t serial = 0;
  for (const Shape& shape : shapes) {
    for (std::size_t n : shape.sentences_per_text) {
      const std::string id = std::string(to_string(shape.theme)) + "-" + std::to_string(serial++);
      std::string original;
      for (std::size_t i = 0; i < n; ++i) {
        if (!original.empty()) original += ' ';
        original += words_sentence(3 + (7 * i) % 11, i);
      }
      const std::size_t m = (4 * n + 4) / 5;
      std::string adapted;
      for (std::size_t i = 0; i < m; ++i) {
        if (!adapted.empty()) adapted += '\n';
        adapted += words_sentence(2 + (5 * i) % 7, i + 1);
      }
      documents.push_back(build(id, Role::Original, shape.theme, original, n));
      documents.push_back(build(id + "-adapted", Role::Adapted, shape.theme, adapted, m));
    }
  }
  return documents;
}

}  // namespace lefa::test
