#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lefa/guidelines.hpp"
#include "lefa/textmodel.hpp"

namespace lefa {

/// Output errors observed in model simplifications.
enum class ErrorClass { AgreementError, TermInconsistency, UnexplainedTerm };

std::string_view to_string(ErrorClass error_class);

/// TermInconsistency -> G11, UnexplainedTerm -> G6, AgreementError -> none.
std::optional<Guideline> related_guideline(ErrorClass error_class);

struct ErrorInstance {
  ErrorClass error_class = ErrorClass::AgreementError;
  std::size_t sentence = 0;
  Span span;
  std::string detail;
  std::optional<Guideline> related_guideline;

  bool operator==(const ErrorInstance&) const = default;
};

ErrorInstance make_error(ErrorClass error_class, std::size_t sentence, Span span,
                         std::string detail);

nlohmann::ordered_json to_json(const ErrorInstance& error);

}  // namespace lefa
