#include "lefa/error_taxonomy.hpp"

namespace lefa {

std::string_view to_string(ErrorClass error_class) {
  switch (error_class) {
    case ErrorClass::AgreementError: return "AgreementError";
    case ErrorClass::TermInconsistency: return "TermInconsistency";
    case ErrorClass::UnexplainedTerm: return "UnexplainedTerm";
  }
  return "AgreementError";
}

std::optional<Guideline> related_guideline(ErrorClass error_class) {
  switch (error_class) {
    case ErrorClass::TermInconsistency: return Guideline::G11;
    case ErrorClass::UnexplainedTerm: return Guideline::G6;
    case ErrorClass::AgreementError: return std::nullopt;
  }
  return std::nullopt;
}

ErrorInstance make_error(ErrorClass error_class, std::size_t sentence, Span span,
                         std::string detail) {
  return {error_class, sentence, span, std::move(detail), related_guideline(error_class)};
}

nlohmann::ordered_json to_json(const ErrorInstance& error) {
  nlohmann::ordered_json json;
  json["error_class"] = to_string(error.error_class);
  json["sentence"] = error.sentence;
  json["span"] = {error.span.start, error.span.end};
  json["detail"] = error.detail;
  json["related_guideline"] =
      error.related_guideline ? nlohmann::ordered_json(to_string(*error.related_guideline))
                              : nlohmann::ordered_json(nullptr);
  return json;
}

}  // namespace lefa
