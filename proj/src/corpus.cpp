#include "lefa/corpus.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "lefa/error.hpp"

namespace lefa {

namespace {

constexpr std::string_view kTsvHeader =
    "version\tkind\torig_doc\torig_idx\tadp_doc\tadp_idx\tscore\torig_text\tadp_text\ttheme";
constexpr std::size_t kTsvColumns = 10;

std::size_t count_words(const Sentence& sentence) {
  if (!sentence.tokens.empty() || sentence.text.empty()) return word_count(sentence);
  return word_count(sentence.text, SegmenterConfig{});
}

double ratio(std::size_t words, std::size_t sentences) {
  return sentences == 0 ? 0.0 : static_cast<double>(words) / static_cast<double>(sentences);
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cells.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cells;
}

template <typename T>
T parse_number(std::string_view text, std::string_view field, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("invalid " + std::string(field) + ": '" + std::string(text) + "'", line);
  }
  return value;
}

Theme parse_theme_field(std::string_view text, std::size_t line) {
  auto theme = parse_theme(text);
  if (!theme) throw ParseError("unknown theme '" + std::string(text) + "'", line);
  return *theme;
}

void check_version(std::string_view version, std::size_t line) {
  if (version != kSchemaVersion) {
    throw Error(ErrorKind::SchemaVersionMismatch,
                "line " + std::to_string(line) + ": schema version '" + std::string(version) +
                    "', expected '" + std::string(kSchemaVersion) + "'");
  }
}

void finish(AlignedCorpus& corpus, const SegmenterConfig& segmenter) {
  if (!corpus.pairs.empty()) corpus.stats = compute_stats(corpus.pairs, segmenter);
}

std::size_t sentence_index(const nlohmann::json& record, const char* field, std::size_t line) {
  const auto& value = record.at(field);
  if (!value.is_number_unsigned()) {
    throw ParseError(std::string(field) + " must be a non-negative integer", line);
  }
  return value.get<std::size_t>();
}

AlignedCorpus import_jsonl(std::istream& in, const SegmenterConfig& segmenter) {
  AlignedCorpus corpus;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), number);
    }
    try {
      if (!record.is_object()) throw ParseError("expected a JSON object", number);
      if (!record.contains("version")) throw ParseError("missing \"version\"", number);
      check_version(record.at("version").get<std::string>(), number);
      SentenceRef original{record.at("orig_doc").get<std::string>(),
                           sentence_index(record, "orig_idx", number)};
      if (record.value("dropped", false)) {
        corpus.dropped_originals.push_back({std::move(original), record.at("best_score").get<double>()});
        continue;
      }
      AlignmentPair pair;
      pair.original = std::move(original);
      pair.adapted = {record.at("adp_doc").get<std::string>(), sentence_index(record, "adp_idx", number)};
      pair.similarity = record.at("score").get<double>();
      pair.original_text = record.at("orig_text").get<std::string>();
      pair.adapted_text = record.at("adp_text").get<std::string>();
      pair.theme = parse_theme_field(record.value("theme", "other"), number);
      corpus.pairs.push_back(std::move(pair));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid record: ") + e.what(), number);
    }
  }
  finish(corpus, segmenter);
  return corpus;
}

AlignedCorpus import_tsv(std::istream& in, const SegmenterConfig& segmenter) {
  AlignedCorpus corpus;
  std::size_t number = 0;
  bool header_seen = false;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line != kTsvHeader) throw ParseError("missing or unexpected TSV header", number);
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_tabs(line);
    if (cells.size() != kTsvColumns) {
      throw ParseError("expected " + std::to_string(kTsvColumns) + " columns, found " +
                           std::to_string(cells.size()),
                       number);
    }
    check_version(cells[0], number);
    SentenceRef original{unescape_tsv(cells[2]), parse_number<std::size_t>(cells[3], "orig_idx", number)};
    const double score = parse_number<double>(cells[6], "score", number);
    if (cells[1] == "dropped") {
      corpus.dropped_originals.push_back({std::move(original), score});
    } else if (cells[1] == "pair") {
      AlignmentPair pair;
      pair.original = std::move(original);
      pair.adapted = {unescape_tsv(cells[4]), parse_number<std::size_t>(cells[5], "adp_idx", number)};
      pair.similarity = score;
      pair.original_text = unescape_tsv(cells[7]);
      pair.adapted_text = unescape_tsv(cells[8]);
      pair.theme = parse_theme_field(cells[9], number);
      corpus.pairs.push_back(std::move(pair));
    } else {
      throw ParseError("unknown row kind '" + cells[1] + "'", number);
    }
  }
  finish(corpus, segmenter);
  return corpus;
}

}  // namespace

CorpusStats compute_stats(std::span<const AlignmentPair> pairs, const SegmenterConfig& segmenter) {
  if (pairs.empty()) throw Error(ErrorKind::EmptyCorpus, "no aligned pairs");
  CorpusStats stats;
  std::set<SentenceRef> adapted_seen;
  std::map<Theme, std::set<std::string>> documents;
  for (const AlignmentPair& pair : pairs) {
    ++stats.sentence_count;
    stats.original_words += word_count(pair.original_text, segmenter);
    if (adapted_seen.insert(pair.adapted).second) {
      ++stats.adapted_sentence_count;
      stats.adapted_words += word_count(pair.adapted_text, segmenter);
    }
    ++stats.per_theme[pair.theme].sentence_count;
    documents[pair.theme].insert(pair.original.doc_id);
  }
  for (const auto& [theme, ids] : documents) stats.per_theme[theme].text_count = ids.size();
  stats.mean_original_words_per_sentence = ratio(stats.original_words, stats.sentence_count);
  stats.mean_adapted_words_per_sentence = ratio(stats.adapted_words, stats.adapted_sentence_count);
  return stats;
}

CorpusStats compute_stats(const AlignedCorpus& corpus, const SegmenterConfig& segmenter) {
  return compute_stats(std::span<const AlignmentPair>(corpus.pairs), segmenter);
}

CorpusStats compute_stats(std::span<const Document> documents) {
  CorpusStats stats;
  for (const Document& document : documents) {
    std::size_t words = 0;
    for (const Sentence& sentence : document.sentences) words += count_words(sentence);
    if (document.role == Role::Original) {
      stats.sentence_count += document.sentences.size();
      stats.original_words += words;
      ThemeCount& count = stats.per_theme[document.theme];
      ++count.text_count;
      count.sentence_count += document.sentences.size();
    } else {
      stats.adapted_sentence_count += document.sentences.size();
      stats.adapted_words += words;
    }
  }
  if (stats.sentence_count == 0) throw Error(ErrorKind::EmptyCorpus, "no original sentences");
  stats.mean_original_words_per_sentence = ratio(stats.original_words, stats.sentence_count);
  stats.mean_adapted_words_per_sentence = ratio(stats.adapted_words, stats.adapted_sentence_count);
  return stats;
}

PairFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".tsv" ? PairFormat::Tsv : PairFormat::Jsonl;
}

std::string escape_tsv(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_tsv(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\' || i + 1 == text.size()) {
      out += text[i];
      continue;
    }
    switch (text[++i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default:
        out += '\\';
        out += text[i];
    }
  }
  return out;
}

void export_pairs(const AlignedCorpus& corpus, PairFormat format, std::ostream& out) {
  if (format == PairFormat::Jsonl) {
    for (const AlignmentPair& pair : corpus.pairs) {
      nlohmann::ordered_json record;
      record["version"] = kSchemaVersion;
      record["orig_doc"] = pair.original.doc_id;
      record["orig_idx"] = pair.original.index;
      record["adp_doc"] = pair.adapted.doc_id;
      record["adp_idx"] = pair.adapted.index;
      record["score"] = pair.similarity;
      record["orig_text"] = pair.original_text;
      record["adp_text"] = pair.adapted_text;
      record["theme"] = to_string(pair.theme);
      out << record.dump() << '\n';
    }
    for (const DroppedOriginal& dropped : corpus.dropped_originals) {
      nlohmann::ordered_json record;
      record["version"] = kSchemaVersion;
      record["orig_doc"] = dropped.ref.doc_id;
      record["orig_idx"] = dropped.ref.index;
      record["best_score"] = dropped.best_score;
      record["dropped"] = true;
      out << record.dump() << '\n';
    }
  } else {
    out << kTsvHeader << '\n';
    for (const AlignmentPair& pair : corpus.pairs) {
      out << kSchemaVersion << "\tpair\t" << escape_tsv(pair.original.doc_id) << '\t'
          << pair.original.index << '\t' << escape_tsv(pair.adapted.doc_id) << '\t'
          << pair.adapted.index << '\t' << format_double(pair.similarity) << '\t'
          << escape_tsv(pair.original_text) << '\t' << escape_tsv(pair.adapted_text) << '\t'
          << to_string(pair.theme) << '\n';
    }
    for (const DroppedOriginal& dropped : corpus.dropped_originals) {
      out << kSchemaVersion << "\tdropped\t" << escape_tsv(dropped.ref.doc_id) << '\t'
          << dropped.ref.index << "\t\t\t" << format_double(dropped.best_score) << "\t\t\t\n";
    }
  }
  if (!out) throw Error(ErrorKind::Io, "failed to write aligned corpus");
}

void export_pairs(const AlignedCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  export_pairs(corpus, format_for_path(path), out);
}

AlignedCorpus import_pairs(std::istream& in, PairFormat format, const SegmenterConfig& segmenter) {
  return format == PairFormat::Jsonl ? import_jsonl(in, segmenter) : import_tsv(in, segmenter);
}

AlignedCorpus import_pairs(const std::filesystem::path& path, const SegmenterConfig& segmenter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  return import_pairs(in, format_for_path(path), segmenter);
}

std::string format_stats(const CorpusStats& stats) {
  auto fixed = [](double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    return std::string(buffer);
  };
  std::string out;
  out += "sentence_count: " + std::to_string(stats.sentence_count) + '\n';
  out += "adapted_sentence_count: " + std::to_string(stats.adapted_sentence_count) + '\n';
  out += "original_words: " + std::to_string(stats.original_words) + '\n';
  out += "adapted_words: " + std::to_string(stats.adapted_words) + '\n';
  out += "mean_original_words_per_sentence: " + fixed(stats.mean_original_words_per_sentence) + '\n';
  out += "mean_adapted_words_per_sentence: " + fixed(stats.mean_adapted_words_per_sentence) + '\n';
  out += "per_theme:\n";
  for (const auto& [theme, count] : stats.per_theme) {
    out += "  " + std::string(to_string(theme)) + ": text_count=" + std::to_string(count.text_count) +
           " sentence_count=" + std::to_string(count.sentence_count) + '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const CorpusStats& stats) {
  nlohmann::ordered_json json;
  json["sentence_count"] = stats.sentence_count;
  json["adapted_sentence_count"] = stats.adapted_sentence_count;
  json["original_words"] = stats.original_words;
  json["adapted_words"] = stats.adapted_words;
  json["mean_original_words_per_sentence"] = stats.mean_original_words_per_sentence;
  json["mean_adapted_words_per_sentence"] = stats.mean_adapted_words_per_sentence;
  json["per_theme"] = nlohmann::ordered_json::object();
  for (const auto& [theme, count] : stats.per_theme) {
    json["per_theme"][std::string(to_string(theme))] = {{"text_count", count.text_count},
                                                        {"sentence_count", count.sentence_count}};
  }
  return json;
}

}  // namespace lefa
