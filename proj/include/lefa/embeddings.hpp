#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lefa {

/// A sentence representation. Values are held in double precision; all
/// similarity math is 64-bit.
class EmbeddingVector {
 public:
  /// Throws InvalidArgument when `values` is empty.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dims() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double norm() const;
  /// Unit-length copy. Throws InvalidArgument for the zero vector.
  EmbeddingVector normalized() const;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

/// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

enum class ProviderKind { FileBacked, HttpService };

struct EmbeddingProviderConfig {
  ProviderKind kind = ProviderKind::FileBacked;
  std::string path_or_url;
  std::size_t expected_dims = 768;
  std::size_t batch_size = 32;
  int timeout_ms = 10000;
  int retries = 2;

  /// "file:<path>" or "http://host:port[/prefix]".
  static EmbeddingProviderConfig parse(std::string_view spec);
  void validate() const;
};

/// Lower-case hex SHA-256 of the NFC form of `text`.
std::string text_key(std::string_view text);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  /// One unit vector per text, in input order.
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
};

/// JSONL store of {"sha256","dims","values"} records keyed by text_key().
class FileEmbeddingProvider final : public EmbeddingProvider {
 public:
  FileEmbeddingProvider(const std::filesystem::path& path, std::size_t expected_dims);
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::size_t size() const { return store_.size(); }

 private:
  std::size_t expected_dims_;
  std::unordered_map<std::string, EmbeddingVector> store_;
};

/// POST {url}/embed with {"texts":[...]}; expects {"vectors":[[...],...]}.
/// Requests are split into batches of `batch_size`. Each call opens its own
/// connection, so instances hold no mutable state.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(EmbeddingProviderConfig config);
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  EmbeddingProviderConfig config_;
};

std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderConfig& config);

/// Throws InvalidArgument for an empty list, ProviderUnavailable,
/// DimensionMismatch or MissingEmbedding.
std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const EmbeddingProviderConfig& provider);

/// Writes one store record; used by fixtures and the CLI.
std::string store_record(std::string_view text, const EmbeddingVector& vector);

}  // namespace lefa
