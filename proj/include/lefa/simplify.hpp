#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lefa/error_taxonomy.hpp"
#include "lefa/guidelines.hpp"
#include "lefa/linter.hpp"

namespace lefa {

enum class ExperimentId { E1 = 1, E2, E3, E4, E5 };

enum class PromptKind { ShortDirect, ShortDirectEnglish, GuidelineEnriched };

std::string_view to_string(ExperimentId id);
std::optional<ExperimentId> parse_experiment(std::string_view text);

struct ExperimentConfig {
  ExperimentId id = ExperimentId::E1;
  std::string model_label;
  bool uses_translation_roundtrip = false;
  PromptKind prompt_kind = PromptKind::ShortDirect;
  std::string endpoint;
  double temperature = 0.0;
  int max_output_tokens = 512;
  int timeout_ms = 60000;
  int retries = 2;

  /// The experiment matrix: E1/E2 on the fine-tuned 7B model, E3-E5 on the
  /// 70B model, E2/E4 with the English round trip, E5 with the guideline prompt.
  static ExperimentConfig preset(ExperimentId id, std::string endpoint = {});
  /// Throws InvalidArgument when the invariants of the matrix are broken.
  void validate() const;
};

enum class Stage { Simplify, TranslateToEnglish, SimplifyEnglish, TranslateToSpanish };

std::string_view to_string(Stage stage);

/// One stage for direct prompts, three (translate, simplify, back-translate)
/// for the round trip.
std::vector<Stage> stages_for(const ExperimentConfig& config);

/// Prompt texts. Each carries an "{input}" placeholder; the guideline prompt
/// also carries "{guidelines}". Lines starting with '#' in the resource files
/// are comments.
struct PromptTemplates {
  std::string simplify_es;
  std::string simplify_en;
  std::string translate_to_en;
  std::string translate_to_es;
  std::string guidelines_es;

  /// Compiled from resources/prompts at build time.
  static PromptTemplates builtin();
  static PromptTemplates load(const std::filesystem::path& dir);
};

using GuidelineCatalog = std::span<const GuidelineInfo>;

/// Prompt for a given stage. Throws MissingGuidelines for the guideline
/// prompt without a catalog.
std::string build_stage_prompt(const ExperimentConfig& config, Stage stage,
                               std::string_view input,
                               std::optional<GuidelineCatalog> guidelines = std::nullopt,
                               const PromptTemplates& templates = PromptTemplates::builtin());

/// Prompt of the first stage.
std::string build_prompt(const ExperimentConfig& config, std::string_view input,
                         std::optional<GuidelineCatalog> guidelines = std::nullopt,
                         const PromptTemplates& templates = PromptTemplates::builtin());

struct GenerationRequest {
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 512;
};

class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  /// Raw model text. Throws EndpointError.
  virtual std::string generate(const GenerationRequest& request) = 0;
};

/// POST {endpoint}/generate with {"prompt","temperature","max_tokens"};
/// expects {"text": "..."} and HTTP 200. Non-200 and transport failures are
/// retried `retries` times before EndpointError.
class HttpGenerationClient final : public GenerationClient {
 public:
  HttpGenerationClient(std::string endpoint, int timeout_ms, int retries);
  std::string generate(const GenerationRequest& request) override;

 private:
  std::string endpoint_;
  int timeout_ms_;
  int retries_;
};

struct TranscriptEntry {
  Stage stage = Stage::Simplify;
  std::string prompt;
  std::string raw_response;

  bool operator==(const TranscriptEntry&) const = default;
};

struct SimplificationResult {
  std::string input_sentence;
  std::string final_output;
  std::vector<TranscriptEntry> transcript;
  ExperimentId config_id = ExperimentId::E1;

  bool operator==(const SimplificationResult&) const = default;
};

nlohmann::ordered_json to_json(const SimplificationResult& result);

/// Runs the stages strictly in order; each stage consumes the previous
/// response. Single-stage runs propagate EndpointError and EmptyResponse;
/// round-trip runs wrap a failing stage in StageFailure.
SimplificationResult simplify(const ExperimentConfig& config, std::string_view input,
                              GenerationClient& client,
                              std::optional<GuidelineCatalog> guidelines = guideline_catalog(),
                              const PromptTemplates& templates = PromptTemplates::builtin());

/// Uses an HttpGenerationClient on config.endpoint.
SimplificationResult simplify(const ExperimentConfig& config, std::string_view input);

/// Optional extra analysis of the output document (the evaluator plugs in here).
using AuditHook = std::function<std::vector<ErrorInstance>(const Document&)>;

struct AuditedSimplification {
  SimplificationResult result;
  Document output;
  std::vector<Diagnostic> diagnostics;
  std::vector<ErrorInstance> errors;
};

AuditedSimplification simplify_and_audit(const ExperimentConfig& config, std::string_view input,
                                         GenerationClient& client,
                                         const LintResources& resources,
                                         const AuditHook& hook = {});

}  // namespace lefa
