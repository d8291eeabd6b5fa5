#include "lefa/error.hpp"

namespace lefa {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorKind::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MissingEmbedding: return "MissingEmbedding";
    case ErrorKind::EmptyDocument: return "EmptyDocument";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::MissingResource: return "MissingResource";
    case ErrorKind::MissingGuidelines: return "MissingGuidelines";
    case ErrorKind::EndpointError: return "EndpointError";
    case ErrorKind::EmptyResponse: return "EmptyResponse";
    case ErrorKind::StageFailure: return "StageFailure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(const std::string& message, std::size_t line)
    : Error(ErrorKind::ParseError,
            line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

MissingEmbedding::MissingEmbedding(std::string sha256_hex)
    : Error(ErrorKind::MissingEmbedding, "no vector stored for text sha256 " + sha256_hex),
      sha256_(std::move(sha256_hex)) {}

StageFailure::StageFailure(std::string stage, const std::string& cause)
    : Error(ErrorKind::StageFailure, "stage " + stage + " failed: " + cause),
      stage_(std::move(stage)) {}

}  // namespace lefa
