#include "lefa/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lefa/aligner.hpp"
#include "lefa/corpus.hpp"
#include "lefa/error.hpp"
#include "lefa/evaluator.hpp"
#include "lefa/linter.hpp"
#include "lefa/segmenter.hpp"
#include "lefa/simplify.hpp"

namespace lefa::cli {

namespace {

namespace fs = std::filesystem;

enum class LogLevel { Error, Warn, Info, Debug };

struct Logger {
  LogLevel level = LogLevel::Warn;
  std::ostream* err = &std::cerr;

  void log(LogLevel at, std::string_view message) const {
    if (at > level) return;
    static constexpr std::string_view kNames[] = {"error", "warn", "info", "debug"};
    *err << "lefa: " << kNames[static_cast<int>(at)] << ": " << message << '\n';
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void require_file(const fs::path& path, std::string_view what) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorKind::MissingResource, std::string(what) + " not found: " + path.string());
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void write_output(const fs::path& path, const std::string& content) {
  auto out = open_output(path);
  out << content;
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

Role parse_role_arg(const std::string& text) {
  auto role = parse_role(text);
  if (!role) throw Error(ErrorKind::InvalidArgument, "unknown role '" + text + "'");
  return *role;
}

Theme parse_theme_arg(const std::string& text) {
  auto theme = parse_theme(text);
  if (!theme) throw Error(ErrorKind::InvalidArgument, "unknown theme '" + text + "'");
  return *theme;
}

// A .json file holds one document in the interchange schema; anything else is
// read as plain text and segmented.
Document load_document(const fs::path& path, Role role, const SegmenterConfig& segmenter) {
  require_file(path, "input document");
  const std::string content = read_file(path);
  if (path.extension() == ".json") {
    nlohmann::json json;
    try {
      json = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    Document document = document_from_json(json);
    tokenize_document(document, segmenter);
    return document;
  }
  return make_document(path.stem().string(), role, Theme::Other, content, segmenter);
}

LintResources load_resources(const std::string& dir) {
  if (dir.empty()) {
    throw Error(ErrorKind::MissingResource, "no resource directory given (--resources)");
  }
  return LintResources::load(dir);
}

// ---------------------------------------------------------------------------

struct SegmentArgs {
  std::string in, out, id, role = "original", theme = "other", resources, abbrev;
};

int run_segment(const SegmentArgs& args, std::ostream& out) {
  require_file(args.in, "input text");
  SegmenterConfig segmenter;
  if (!args.resources.empty()) segmenter = load_resources(args.resources).segmenter;
  if (!args.abbrev.empty()) {
    require_file(args.abbrev, "abbreviation list");
    segmenter.abbreviation_lexicon = SegmenterConfig::load_abbreviations(args.abbrev);
  }
  const std::string id = args.id.empty() ? fs::path(args.in).stem().string() : args.id;
  const Document document = make_document(id, parse_role_arg(args.role), parse_theme_arg(args.theme),
                                          read_file(args.in), segmenter);
  const std::string json = to_json(document).dump(2) + "\n";
  if (args.out.empty()) {
    out << json;
  } else {
    write_output(args.out, json);
    out << document.id << ": " << document.sentences.size() << " sentences -> " << args.out
        << '\n';
  }
  return kExitOk;
}

struct AlignArgs {
  std::string original, adapted, provider, out;
  double threshold = 0.5;
  std::size_t dims = 768;
  std::size_t batch_size = 32;
  int timeout_ms = 10000;
  int retries = 2;
  bool one_to_one = false;
};

int run_align(const AlignArgs& args, std::ostream& out) {
  EmbeddingProviderConfig provider = EmbeddingProviderConfig::parse(args.provider);
  provider.expected_dims = args.dims;
  provider.batch_size = args.batch_size;
  provider.timeout_ms = args.timeout_ms;
  provider.retries = args.retries;
  provider.validate();
  if (provider.kind == ProviderKind::FileBacked) require_file(provider.path_or_url, "embedding store");

  AlignmentConfig config;
  config.similarity_threshold = args.threshold;
  config.allow_many_to_one = !args.one_to_one;
  config.validate();

  const SegmenterConfig segmenter;
  const Document original = load_document(args.original, Role::Original, segmenter);
  const Document adapted = load_document(args.adapted, Role::Adapted, segmenter);
  const AlignedCorpus corpus = align(original, adapted, provider, config, segmenter);
  if (args.out.empty()) {
    export_pairs(corpus, PairFormat::Jsonl, out);
  } else {
    export_pairs(corpus, fs::path(args.out));
    out << "pairs: " << corpus.pairs.size() << ", dropped: " << corpus.dropped_originals.size()
        << " -> " << args.out << '\n';
  }
  return kExitOk;
}

struct StatsArgs {
  std::string in, format = "text";
};

int run_stats(const StatsArgs& args, std::ostream& out) {
  require_file(args.in, "aligned corpus");
  const AlignedCorpus corpus = import_pairs(fs::path(args.in));
  const CorpusStats stats = compute_stats(corpus);
  if (args.format == "json") {
    out << to_json(stats).dump(2) << '\n';
  } else {
    out << format_stats(stats);
  }
  return kExitOk;
}

struct LintArgs {
  std::string in, resources, format = "text", out;
  bool applicability = false;
  int rare_rank_threshold = 5000;
  int max_simple_sentence_words = 25;
  int max_commas = 1;
};

std::string render_diagnostics_text(const Document& document,
                                    const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream text;
  for (const Diagnostic& d : diagnostics) {
    text << document.id << ':' << d.sentence << ':' << d.span.start << '-' << d.span.end << ": "
         << to_string(d.guideline) << ' ' << to_string(d.severity) << ": " << d.message << " ["
         << d.evidence << "]\n";
  }
  std::size_t violations = 0;
  for (const Diagnostic& d : diagnostics) violations += d.severity == Severity::Violation;
  text << diagnostics.size() << " findings, " << violations << " violations\n";
  return text.str();
}

int run_lint(const LintArgs& args, std::ostream& out) {
  LintResources resources = load_resources(args.resources);
  resources.config.rare_rank_threshold = args.rare_rank_threshold;
  resources.config.max_simple_sentence_words = args.max_simple_sentence_words;
  resources.config.max_commas = args.max_commas;
  resources.config.validate();
  const Document document = load_document(args.in, Role::Adapted, resources.segmenter);
  const auto diagnostics = lint_document(document, resources.config, resources.morph);

  std::string rendered;
  if (args.format == "json") {
    nlohmann::ordered_json json;
    json["document"] = document.id;
    json["diagnostics"] = nlohmann::ordered_json::array();
    for (const Diagnostic& d : diagnostics) json["diagnostics"].push_back(to_json(d));
    if (args.applicability) {
      json["applicability"] = to_json(applicability(document, resources.config, resources.morph));
    }
    rendered = json.dump(2) + "\n";
  } else {
    rendered = render_diagnostics_text(document, diagnostics);
    if (args.applicability) {
      const auto report = applicability(document, resources.config, resources.morph);
      for (std::size_t i = 0; i < kGuidelineCount; ++i) {
        const auto& entry = report.entries[i];
        rendered += std::string(to_string(guideline_at(i))) + ": " +
                    (entry.status == Applicability::Applicable ? "applicable" : "not applicable") +
                    " (" + entry.reason + ")\n";
      }
      rendered += std::to_string(report.applicable_count()) + " of 21 guidelines applicable\n";
    }
  }
  if (args.out.empty()) {
    out << rendered;
  } else {
    write_output(args.out, rendered);
    out << diagnostics.size() << " findings -> " << args.out << '\n';
  }
  return has_violations(diagnostics) ? kExitViolations : kExitOk;
}

struct SimplifyArgs {
  std::string experiment, in, endpoint, out, resources, prompts;
  bool audit = false;
  double temperature = 0.0;
  int max_tokens = 512;
  int timeout_ms = 60000;
  int retries = 2;
};

int run_simplify(const SimplifyArgs& args, std::ostream& out, const Logger& logger) {
  const auto id = parse_experiment(args.experiment);
  if (!id) throw Error(ErrorKind::InvalidArgument, "unknown experiment '" + args.experiment + "'");
  ExperimentConfig config = ExperimentConfig::preset(*id, args.endpoint);
  config.temperature = args.temperature;
  config.max_output_tokens = args.max_tokens;
  config.timeout_ms = args.timeout_ms;
  config.retries = args.retries;
  config.validate();

  const PromptTemplates templates =
      args.prompts.empty() ? PromptTemplates::builtin() : PromptTemplates::load(args.prompts);
  std::optional<LintResources> resources;
  if (args.audit) resources = load_resources(args.resources);

  require_file(args.in, "input sentences");
  std::vector<std::string> sentences;
  std::istringstream lines(read_file(args.in));
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) sentences.push_back(line);
  }
  if (sentences.empty()) throw Error(ErrorKind::InvalidArgument, args.in + " has no sentences");

  HttpGenerationClient client(config.endpoint, config.timeout_ms, config.retries);
  const AuditHook hook = resources ? make_audit_hook(*resources) : AuditHook{};
  std::string jsonl;
  std::size_t violations = 0;
  for (const std::string& sentence : sentences) {
    logger.log(LogLevel::Info, "simplifying: " + sentence);
    const SimplificationResult result =
        simplify(config, sentence, client, guideline_catalog(), templates);
    nlohmann::ordered_json record = to_json(result);
    if (resources) {
      const Document output = make_document("output", Role::Adapted, Theme::Other,
                                            result.final_output, resources->segmenter);
      const auto diagnostics = lint_document(output, resources->config, resources->morph);
      record["diagnostics"] = nlohmann::ordered_json::array();
      for (const Diagnostic& d : diagnostics) {
        record["diagnostics"].push_back(to_json(d));
        violations += d.severity == Severity::Violation;
      }
      record["errors"] = nlohmann::ordered_json::array();
      for (const ErrorInstance& e : hook(output)) record["errors"].push_back(to_json(e));
    }
    jsonl += record.dump() + "\n";
  }
  if (args.out.empty()) {
    out << jsonl;
  } else {
    write_output(args.out, jsonl);
    out << sentences.size() << " sentences simplified with " << to_string(config.id) << " -> "
        << args.out << '\n';
    if (resources) out << violations << " violations in the outputs\n";
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string gold, candidate, resources, report;
};

int run_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const LintResources resources = load_resources(args.resources);
  const Document gold = load_document(args.gold, Role::Adapted, resources.segmenter);
  const Document candidate = load_document(args.candidate, Role::Adapted, resources.segmenter);
  const auto errors = detect_errors(candidate, resources);
  const ComplianceDelta delta =
      compare_compliance(gold, candidate, resources.config, resources.morph);

  nlohmann::ordered_json report;
  report["gold"] = gold.id;
  report["candidate"] = candidate.id;
  report["errors"] = nlohmann::ordered_json::array();
  for (const ErrorInstance& e : errors) report["errors"].push_back(to_json(e));
  report["compliance"] = to_json(delta);
  const std::string rendered = report.dump(2) + "\n";

  if (args.report.empty()) {
    out << rendered;
  } else {
    write_output(args.report, rendered);
    out << errors.size() << " errors in " << candidate.id << " -> " << args.report << '\n';
    for (std::size_t i = 0; i < kGuidelineCount; ++i) {
      const long net = delta.rows[i].net_delta();
      if (net != 0) {
        out << "  " << to_string(guideline_at(i)) << ": " << (net > 0 ? "+" : "") << net << '\n';
      }
    }
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Easy-to-Read corpus, linting and simplification toolkit", "lefa"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key = value configuration file; flags take precedence");
  app.set_version_flag("--version", "lefa schema version " + std::string(kSchemaVersion));
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  SegmentArgs segment;
  auto* segment_cmd = app.add_subcommand("segment", "Split a text into sentences");
  segment_cmd->add_option("--in", segment.in, "Plain text file")->required();
  segment_cmd->add_option("--out", segment.out, "Document JSON output");
  segment_cmd->add_option("--id", segment.id, "Document id (default: file name)");
  segment_cmd->add_option("--role", segment.role, "original or adapted");
  segment_cmd->add_option("--theme", segment.theme, "Document theme");
  segment_cmd->add_option("--resources", segment.resources, "Resource directory");
  segment_cmd->add_option("--abbrev", segment.abbrev, "Abbreviation list, one per line");

  AlignArgs align_args;
  auto* align_cmd = app.add_subcommand("align", "Align original and adapted sentences");
  align_cmd->add_option("--original", align_args.original, "Original document")->required();
  align_cmd->add_option("--adapted", align_args.adapted, "Adapted document")->required();
  align_cmd->add_option("--provider", align_args.provider, "file:<store.jsonl> or http://host:port")
      ->required();
  align_cmd->add_option("--threshold", align_args.threshold, "Minimum cosine similarity");
  align_cmd->add_option("--dims", align_args.dims, "Embedding dimensions");
  align_cmd->add_option("--batch-size", align_args.batch_size, "HTTP provider batch size");
  align_cmd->add_option("--timeout-ms", align_args.timeout_ms, "HTTP provider timeout");
  align_cmd->add_option("--retries", align_args.retries, "HTTP provider retries");
  align_cmd->add_flag("--one-to-one", align_args.one_to_one,
                      "Let each adapted sentence pair with one original at most");
  align_cmd->add_option("--out", align_args.out, "Aligned corpus (.jsonl or .tsv)");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Statistics of an aligned corpus");
  stats_cmd->add_option("--in", stats.in, "Aligned corpus (.jsonl or .tsv)")->required();
  stats_cmd->add_option("--format", stats.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  LintArgs lint;
  auto* lint_cmd = app.add_subcommand("lint", "Check a document against the writing guidelines");
  lint_cmd->add_option("--in", lint.in, "Document JSON or plain text")->required();
  lint_cmd->add_option("--resources", lint.resources, "Resource directory");
  lint_cmd->add_option("--format", lint.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  lint_cmd->add_option("--out", lint.out, "Write the report here");
  lint_cmd->add_flag("--applicability", lint.applicability, "Include the applicability report");
  lint_cmd->add_option("--rare-rank-threshold", lint.rare_rank_threshold);
  lint_cmd->add_option("--max-simple-sentence-words", lint.max_simple_sentence_words);
  lint_cmd->add_option("--max-commas", lint.max_commas);

  SimplifyArgs simplify_args;
  auto* simplify_cmd = app.add_subcommand("simplify", "Run a simplification experiment");
  simplify_cmd->add_option("--experiment", simplify_args.experiment, "E1 to E5")->required();
  simplify_cmd->add_option("--in", simplify_args.in, "One sentence per line")->required();
  simplify_cmd->add_option("--endpoint", simplify_args.endpoint, "Generation endpoint URL")
      ->required();
  simplify_cmd->add_option("--out", simplify_args.out, "Results JSONL");
  simplify_cmd->add_flag("--audit", simplify_args.audit, "Lint and evaluate each output");
  simplify_cmd->add_option("--resources", simplify_args.resources, "Resource directory");
  simplify_cmd->add_option("--prompts", simplify_args.prompts, "Prompt directory override");
  simplify_cmd->add_option("--temperature", simplify_args.temperature);
  simplify_cmd->add_option("--max-tokens", simplify_args.max_tokens);
  simplify_cmd->add_option("--timeout-ms", simplify_args.timeout_ms);
  simplify_cmd->add_option("--retries", simplify_args.retries);

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare a candidate with a gold adaptation");
  evaluate_cmd->add_option("--gold", evaluate.gold, "Gold document")->required();
  evaluate_cmd->add_option("--candidate", evaluate.candidate, "Candidate document")->required();
  evaluate_cmd->add_option("--resources", evaluate.resources, "Resource directory");
  evaluate_cmd->add_option("--report", evaluate.report, "Report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "lefa: error: " << e.what() << "\n\n" << app.help();
    return kExitError;
  }

  Logger logger;
  logger.err = &err;
  logger.level = log_level == "error" ? LogLevel::Error
                 : log_level == "info" ? LogLevel::Info
                 : log_level == "debug" ? LogLevel::Debug
                                        : LogLevel::Warn;
  try {
    if (segment_cmd->parsed()) return run_segment(segment, out);
    if (align_cmd->parsed()) return run_align(align_args, out);
    if (stats_cmd->parsed()) return run_stats(stats, out);
    if (lint_cmd->parsed()) return run_lint(lint, out);
    if (simplify_cmd->parsed()) return run_simplify(simplify_args, out, logger);
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate, out);
  } catch (const Error& e) {
    logger.log(LogLevel::Error, std::string(to_string(e.kind())) + ": " + e.what());
    return kExitError;
  } catch (const std::exception& e) {
    logger.log(LogLevel::Error, e.what());
    return kExitError;
  }
  err << app.help();
  return kExitError;
}

}  // namespace lefa::cli
