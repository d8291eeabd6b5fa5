#include "lefa/embeddings.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "http_util.hpp"
#include "lefa/error.hpp"
#include "lefa/unicode.hpp"

namespace lefa {

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidArgument, "embedding must have dims > 0");
}

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

EmbeddingVector EmbeddingVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [n](double v) { return v / n; });
  return EmbeddingVector(std::move(out));
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorKind::DimensionMismatch, "cosine of vectors with dims " +
                                                  std::to_string(a.dims()) + " and " +
                                                  std::to_string(b.dims()));
  }
  // Each product and the norm product commute, so the result is symmetric bit for bit.
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dims(); ++i) dot += a.values()[i] * b.values()[i];
  const double denominator = a.norm() * b.norm();
  if (!(denominator > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "cosine is undefined for a zero vector");
  }
  return std::clamp(dot / denominator, -1.0, 1.0);
}

EmbeddingProviderConfig EmbeddingProviderConfig::parse(std::string_view spec) {
  EmbeddingProviderConfig config;
  if (spec.starts_with("file:")) {
    config.kind = ProviderKind::FileBacked;
    config.path_or_url = std::string(spec.substr(5));
  } else if (spec.starts_with("http://")) {
    config.kind = ProviderKind::HttpService;
    config.path_or_url = std::string(spec);
  } else {
    throw Error(ErrorKind::InvalidArgument,
                "provider must be file:<path> or http://host:port, got " + std::string(spec));
  }
  return config;
}

void EmbeddingProviderConfig::validate() const {
  if (expected_dims == 0) throw Error(ErrorKind::InvalidArgument, "expected_dims must be > 0");
  if (batch_size == 0) throw Error(ErrorKind::InvalidArgument, "batch_size must be > 0");
  if (path_or_url.empty()) throw Error(ErrorKind::InvalidArgument, "provider location is empty");
  if (retries < 0 || timeout_ms <= 0) {
    throw Error(ErrorKind::InvalidArgument, "timeout_ms must be > 0 and retries >= 0");
  }
}

std::string text_key(std::string_view text) {
  const std::string normalized = unicode::normalize_nfc(text);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(normalized.data(), normalized.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InvalidArgument, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) hex << std::setw(2) << static_cast<int>(digest[i]);
  return hex.str();
}

std::string store_record(std::string_view text, const EmbeddingVector& vector) {
  nlohmann::ordered_json record{{"sha256", text_key(text)},
                                {"dims", vector.dims()},
                                {"values", std::vector<double>(vector.values().begin(),
                                                               vector.values().end())}};
  return record.dump();
}

FileEmbeddingProvider::FileEmbeddingProvider(const std::filesystem::path& path,
                                             std::size_t expected_dims)
    : expected_dims_(expected_dims) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ProviderUnavailable, "cannot read embedding store " + path.string());
  }
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
      auto dims = record.at("dims").get<std::size_t>();
      auto values = record.at("values").get<std::vector<double>>();
      if (dims != values.size() || dims != expected_dims_) {
        throw Error(ErrorKind::DimensionMismatch,
                    path.string() + " line " + std::to_string(number) + ": expected " +
                        std::to_string(expected_dims_) + " dims, record has " +
                        std::to_string(values.size()));
      }
      store_.insert_or_assign(record.at("sha256").get<std::string>(),
                              EmbeddingVector(std::move(values)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), number);
    }
  }
}

std::vector<EmbeddingVector> FileEmbeddingProvider::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    std::string key = text_key(text);
    auto found = store_.find(key);
    if (found == store_.end()) throw MissingEmbedding(std::move(key));
    out.push_back(found->second.normalized());
  }
  return out;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(EmbeddingProviderConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

std::vector<EmbeddingVector> HttpEmbeddingProvider::embed(std::span<const std::string> texts) {
  const detail::Endpoint endpoint = detail::parse_endpoint(config_.path_or_url);
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += config_.batch_size) {
    const std::size_t end = std::min(texts.size(), begin + config_.batch_size);
    nlohmann::json request{{"texts", nlohmann::json::array()}};
    for (std::size_t i = begin; i < end; ++i) request["texts"].push_back(texts[i]);

    detail::HttpResult result = detail::post_json_with_retries(
        endpoint, "/embed", request.dump(), config_.timeout_ms, config_.retries);
    if (result.status != 200) {
      throw Error(ErrorKind::ProviderUnavailable,
                  config_.path_or_url + "/embed failed after " +
                      std::to_string(config_.retries + 1) + " attempts (" +
                      (result.status == 0 ? result.error : "HTTP " + std::to_string(result.status)) +
                      ")");
    }
    std::vector<std::vector<double>> vectors;
    try {
      vectors = nlohmann::json::parse(result.body).at("vectors").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ProviderUnavailable, std::string("malformed /embed response: ") + e.what());
    }
    if (vectors.size() != end - begin) {
      throw Error(ErrorKind::ProviderUnavailable,
                  "/embed returned " + std::to_string(vectors.size()) + " vectors for " +
                      std::to_string(end - begin) + " texts");
    }
    for (auto& values : vectors) {
      if (values.size() != config_.expected_dims) {
        throw Error(ErrorKind::DimensionMismatch,
                    "/embed returned " + std::to_string(values.size()) + " dims, expected " +
                        std::to_string(config_.expected_dims));
      }
      out.push_back(EmbeddingVector(std::move(values)).normalized());
    }
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderConfig& config) {
  config.validate();
  if (config.kind == ProviderKind::FileBacked) {
    return std::make_unique<FileEmbeddingProvider>(config.path_or_url, config.expected_dims);
  }
  return std::make_unique<HttpEmbeddingProvider>(config);
}

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const EmbeddingProviderConfig& provider) {
  if (texts.empty()) throw Error(ErrorKind::InvalidArgument, "embed_batch needs at least one text");
  return make_provider(provider)->embed(texts);
}

}  // namespace lefa
