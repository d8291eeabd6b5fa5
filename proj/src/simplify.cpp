#include "lefa/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "builtin_resources.hpp"
#include "http_util.hpp"
#include "lefa/error.hpp"
#include "lefa/segmenter.hpp"

namespace lefa {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n\f\v");
  return std::string(text.substr(first, last - first + 1));
}

// Drops '#' comment lines and surrounding blank lines.
std::string strip_comments(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with('#')) continue;
    out += line;
    out += '\n';
  }
  return trim(out);
}

void require_placeholder(const std::string& text, std::string_view placeholder,
                         std::string_view name) {
  if (text.find(placeholder) == std::string::npos) {
    throw ParseError("prompt '" + std::string(name) + "' lacks the " + std::string(placeholder) +
                     " placeholder");
  }
}

PromptTemplates make_templates(std::string_view simplify_es, std::string_view simplify_en,
                               std::string_view translate_to_en, std::string_view translate_to_es,
                               std::string_view guidelines_es) {
  PromptTemplates t{strip_comments(simplify_es), strip_comments(simplify_en),
                    strip_comments(translate_to_en), strip_comments(translate_to_es),
                    strip_comments(guidelines_es)};
  require_placeholder(t.simplify_es, "{input}", "base_es");
  require_placeholder(t.simplify_en, "{input}", "simplify_en");
  require_placeholder(t.translate_to_en, "{input}", "translate_to_en");
  require_placeholder(t.translate_to_es, "{input}", "translate_to_es");
  require_placeholder(t.guidelines_es, "{input}", "guidelines_es");
  require_placeholder(t.guidelines_es, "{guidelines}", "guidelines_es");
  return t;
}

std::string read_prompt(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingResource, "cannot read prompt " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Single left-to-right pass, so placeholder text inside substituted values is
// never expanded.
std::string render(std::string_view templ, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < templ.size()) {
    bool replaced = false;
    if (templ[i] == '{') {
      for (const auto& [key, value] : values) {
        const std::string placeholder = "{" + key + "}";
        if (templ.substr(i, placeholder.size()) == placeholder) {
          out += value;
          i += placeholder.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += templ[i++];
  }
  return out;
}

std::string guideline_block(GuidelineCatalog catalog) {
  std::string block;
  for (const GuidelineInfo& info : catalog) {
    if (!block.empty()) block += '\n';
    block += std::string(to_string(info.id)) + ". " + std::string(info.text);
  }
  return block;
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::E1: return "E1";
    case ExperimentId::E2: return "E2";
    case ExperimentId::E3: return "E3";
    case ExperimentId::E4: return "E4";
    case ExperimentId::E5: return "E5";
  }
  return "E1";
}

std::optional<ExperimentId> parse_experiment(std::string_view text) {
  for (ExperimentId id : {ExperimentId::E1, ExperimentId::E2, ExperimentId::E3, ExperimentId::E4,
                          ExperimentId::E5}) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Simplify: return "simplify";
    case Stage::TranslateToEnglish: return "translate_to_en";
    case Stage::SimplifyEnglish: return "simplify_en";
    case Stage::TranslateToSpanish: return "translate_to_es";
  }
  return "simplify";
}

ExperimentConfig ExperimentConfig::preset(ExperimentId id, std::string endpoint) {
  ExperimentConfig config;
  config.id = id;
  config.endpoint = std::move(endpoint);
  const bool small = id == ExperimentId::E1 || id == ExperimentId::E2;
  config.model_label = small ? "7B-finetuned" : "70B";
  config.uses_translation_roundtrip = id == ExperimentId::E2 || id == ExperimentId::E4;
  config.prompt_kind = config.uses_translation_roundtrip ? PromptKind::ShortDirectEnglish
                       : id == ExperimentId::E5         ? PromptKind::GuidelineEnriched
                                                        : PromptKind::ShortDirect;
  return config;
}

void ExperimentConfig::validate() const {
  const ExperimentConfig expected = preset(id);
  if (uses_translation_roundtrip != expected.uses_translation_roundtrip) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(to_string(id)) +
                    (expected.uses_translation_roundtrip ? " requires" : " does not use") +
                    " the translation round trip");
  }
  if (prompt_kind != expected.prompt_kind) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(to_string(id)) + " uses a different prompt kind");
  }
  if (!std::isfinite(temperature) || temperature < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "temperature must be a non-negative number");
  }
  if (max_output_tokens <= 0) {
    throw Error(ErrorKind::InvalidArgument, "max_output_tokens must be positive");
  }
  if (timeout_ms <= 0) throw Error(ErrorKind::InvalidArgument, "timeout_ms must be positive");
  if (retries < 0) throw Error(ErrorKind::InvalidArgument, "retries must not be negative");
}

std::vector<Stage> stages_for(const ExperimentConfig& config) {
  if (config.uses_translation_roundtrip) {
    return {Stage::TranslateToEnglish, Stage::SimplifyEnglish, Stage::TranslateToSpanish};
  }
  return {Stage::Simplify};
}

PromptTemplates PromptTemplates::builtin() {
  static const PromptTemplates templates =
      make_templates(detail::kPromptBaseEs, detail::kPromptSimplifyEn,
                     detail::kPromptTranslateToEn, detail::kPromptTranslateToEs,
                     detail::kPromptGuidelinesEs);
  return templates;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  return make_templates(read_prompt(dir / "base_es.txt"), read_prompt(dir / "simplify_en.txt"),
                        read_prompt(dir / "translate_to_en.txt"),
                        read_prompt(dir / "translate_to_es.txt"),
                        read_prompt(dir / "guidelines_es.txt"));
}

std::string build_stage_prompt(const ExperimentConfig& config, Stage stage, std::string_view input,
                               std::optional<GuidelineCatalog> guidelines,
                               const PromptTemplates& templates) {
  config.validate();
  const auto stages = stages_for(config);
  if (std::find(stages.begin(), stages.end(), stage) == stages.end()) {
    throw Error(ErrorKind::InvalidArgument, std::string(to_string(config.id)) +
                                                " has no " + std::string(to_string(stage)) +
                                                " stage");
  }
  std::map<std::string, std::string> values{{"input", std::string(input)}};
  switch (stage) {
    case Stage::TranslateToEnglish: return render(templates.translate_to_en, values);
    case Stage::SimplifyEnglish: return render(templates.simplify_en, values);
    case Stage::TranslateToSpanish: return render(templates.translate_to_es, values);
    case Stage::Simplify: break;
  }
  if (config.prompt_kind != PromptKind::GuidelineEnriched) {
    return render(templates.simplify_es, values);
  }
  if (!guidelines || guidelines->empty()) {
    throw Error(ErrorKind::MissingGuidelines,
                std::string(to_string(config.id)) + " needs the guideline catalog");
  }
  values["guidelines"] = guideline_block(*guidelines);
  return render(templates.guidelines_es, values);
}

std::string build_prompt(const ExperimentConfig& config, std::string_view input,
                         std::optional<GuidelineCatalog> guidelines,
                         const PromptTemplates& templates) {
  return build_stage_prompt(config, stages_for(config).front(), input, guidelines, templates);
}

HttpGenerationClient::HttpGenerationClient(std::string endpoint, int timeout_ms, int retries)
    : endpoint_(std::move(endpoint)), timeout_ms_(timeout_ms), retries_(retries) {
  detail::parse_endpoint(endpoint_);
  if (timeout_ms_ <= 0) throw Error(ErrorKind::InvalidArgument, "timeout_ms must be positive");
  if (retries_ < 0) throw Error(ErrorKind::InvalidArgument, "retries must not be negative");
}

std::string HttpGenerationClient::generate(const GenerationRequest& request) {
  nlohmann::json body{{"prompt", request.prompt},
                      {"temperature", request.temperature},
                      {"max_tokens", request.max_tokens}};
  const auto result = detail::post_json_with_retries(detail::parse_endpoint(endpoint_), "/generate",
                                                     body.dump(), timeout_ms_, retries_);
  if (result.status != 200) {
    throw Error(ErrorKind::EndpointError,
                "POST /generate failed after " + std::to_string(retries_ + 1) + " attempts (" +
                    (result.status == 0 ? result.error : "HTTP " + std::to_string(result.status)) +
                    ")");
  }
  try {
    const auto json = nlohmann::json::parse(result.body);
    if (!json.is_object() || !json.contains("text") || !json["text"].is_string()) {
      throw Error(ErrorKind::EndpointError, "/generate response lacks a \"text\" string");
    }
    return json["text"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::EndpointError, std::string("/generate returned malformed JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const SimplificationResult& result) {
  nlohmann::ordered_json json;
  json["config_id"] = to_string(result.config_id);
  json["input_sentence"] = result.input_sentence;
  json["final_output"] = result.final_output;
  json["transcript"] = nlohmann::ordered_json::array();
  for (const TranscriptEntry& entry : result.transcript) {
    json["transcript"].push_back({{"stage", to_string(entry.stage)},
                                  {"prompt", entry.prompt},
                                  {"raw_response", entry.raw_response}});
  }
  return json;
}

SimplificationResult simplify(const ExperimentConfig& config, std::string_view input,
                              GenerationClient& client, std::optional<GuidelineCatalog> guidelines,
                              const PromptTemplates& templates) {
  config.validate();
  if (trim(input).empty()) throw Error(ErrorKind::InvalidArgument, "input sentence is empty");

  SimplificationResult result;
  result.input_sentence = std::string(input);
  result.config_id = config.id;
  std::string current(input);
  for (Stage stage : stages_for(config)) {
    const std::string prompt = build_stage_prompt(config, stage, current, guidelines, templates);
    try {
      std::string raw = client.generate({prompt, config.temperature, config.max_output_tokens});
      std::string text = trim(raw);
      result.transcript.push_back({stage, prompt, std::move(raw)});
      if (text.empty()) {
        throw Error(ErrorKind::EmptyResponse,
                    "stage " + std::string(to_string(stage)) + " returned an empty response");
      }
      current = std::move(text);
    } catch (const Error& e) {
      if (!config.uses_translation_roundtrip) throw;
      throw StageFailure(std::string(to_string(stage)), e.what());
    }
  }
  result.final_output = current;
  return result;
}

SimplificationResult simplify(const ExperimentConfig& config, std::string_view input) {
  if (config.endpoint.empty()) throw Error(ErrorKind::InvalidArgument, "no endpoint configured");
  HttpGenerationClient client(config.endpoint, config.timeout_ms, config.retries);
  return simplify(config, input, client);
}

AuditedSimplification simplify_and_audit(const ExperimentConfig& config, std::string_view input,
                                         GenerationClient& client, const LintResources& resources,
                                         const AuditHook& hook) {
  AuditedSimplification audited;
  audited.result = simplify(config, input, client);
  audited.output = make_document("output", Role::Adapted, Theme::Other,
                                 audited.result.final_output, resources.segmenter);
  audited.diagnostics = lint_document(audited.output, resources.config, resources.morph);
  if (hook) audited.errors = hook(audited.output);
  return audited;
}

}  // namespace lefa
