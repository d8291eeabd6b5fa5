#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lefa {

enum class ErrorKind {
  InvalidArgument,
  Io,
  ParseError,
  SchemaVersionMismatch,
  ProviderUnavailable,
  DimensionMismatch,
  MissingEmbedding,
  EmptyDocument,
  EmptyCorpus,
  MissingResource,
  MissingGuidelines,
  EndpointError,
  EmptyResponse,
  StageFailure,
};

std::string_view to_string(ErrorKind kind);

/// Base of every exception thrown by the toolkit. `kind()` identifies the
/// contract-level error so callers (and the CLI exit-code mapping) can branch
/// without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input. `line()` is 1-based; 0 when the input is not line oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingEmbedding : public Error {
 public:
  explicit MissingEmbedding(std::string sha256_hex);
  const std::string& sha256() const noexcept { return sha256_; }

 private:
  std::string sha256_;
};

class StageFailure : public Error {
 public:
  StageFailure(std::string stage, const std::string& cause);
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace lefa
