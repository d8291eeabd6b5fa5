#include <doctest.h>

#include <cmath>

#include "lefa/embeddings.hpp"
#include "lefa/error.hpp"
#include "support/fixtures.hpp"
#include "support/mock_server.hpp"
#include "support/oracle.hpp"

using namespace lefa;

namespace {

EmbeddingVector vec(std::vector<double> values) { return EmbeddingVector(std::move(values)); }

EmbeddingProviderConfig file_config(const std::filesystem::path& path, std::size_t dims) {
  EmbeddingProviderConfig config;
  config.kind = ProviderKind::FileBacked;
  config.path_or_url = path.string();
  config.expected_dims = dims;
  return config;
}

EmbeddingProviderConfig http_config(const test::MockServer& server, std::size_t dims) {
  EmbeddingProviderConfig config = EmbeddingProviderConfig::parse(server.url());
  config.expected_dims = dims;
  config.timeout_ms = 2000;
  config.retries = 2;
  return config;
}

std::vector<std::string> numbered_texts(std::size_t n) {
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < n; ++i) texts.push_back("Frase número " + std::to_string(i) + ".");
  return texts;
}

}  // namespace

TEST_CASE("cosine on analytic cases") {
  CHECK(cosine(vec({1, 0}), vec({0, 1})) == doctest::Approx(0.0));
  CHECK(cosine(vec({0.6, 0.8}), vec({1, 0})) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(cosine(vec({1, 2, 3}), vec({-1, -2, -3})) == doctest::Approx(-1.0));
  const EmbeddingVector unit = vec({0.0, 0.6, 0.8});
  CHECK(std::abs(cosine(unit, unit) - 1.0) <= 1e-6);
}

TEST_CASE("cosine rejects mismatched dimensions") {
  try {
    cosine(vec({1, 0}), vec({1, 0, 0}));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("cosine stays in range and matches the textbook formula") {
  test::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto a = test::random_vector(rng, 1 + rng() % 64);
    auto b = test::random_vector(rng, a.size());
    const double c = cosine(vec(a), vec(b));
    CHECK(c >= -1.0);
    CHECK(c <= 1.0);
    CHECK(c == doctest::Approx(test::reference_cosine(a, b)).epsilon(1e-9));
    CHECK(c == cosine(vec(b), vec(a)));
  }
}

TEST_CASE("vectors") {
  CHECK_THROWS_AS(EmbeddingVector(std::vector<double>{}), Error);
  CHECK(vec({3, 4}).norm() == doctest::Approx(5.0));
  const EmbeddingVector n = vec({3, 4}).normalized();
  CHECK(n.values()[0] == doctest::Approx(0.6));
  CHECK(n.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(vec({0, 0}).normalized(), Error);
}

TEST_CASE("text_key is the hex SHA-256 of the NFC text") {
  CHECK(text_key("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(text_key("Adio\xCC\x81s") == text_key("Adiós"));
  CHECK(text_key("a") != text_key("b"));
}

TEST_CASE("provider specs") {
  const auto file = EmbeddingProviderConfig::parse("file:/tmp/store.jsonl");
  CHECK(file.kind == ProviderKind::FileBacked);
  CHECK(file.path_or_url == "/tmp/store.jsonl");
  const auto http = EmbeddingProviderConfig::parse("http://127.0.0.1:9000");
  CHECK(http.kind == ProviderKind::HttpService);
  CHECK_THROWS_AS(EmbeddingProviderConfig::parse("ftp://x"), Error);

  EmbeddingProviderConfig bad = file;
  bad.batch_size = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = file;
  bad.expected_dims = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = file;
  bad.retries = -1;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("file-backed store returns unit vectors in input order") {
  test::TempDir dir;
  const std::vector<std::string> texts{"Uno.", "Dos.", "Tres."};
  const std::vector<std::vector<double>> raw{{3, 4, 0}, {0, 0, 2}, {1, 1, 1}};
  std::string store;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    store += store_record(texts[i], vec(raw[i])) + "\n";
  }
  test::write_text(dir / "store.jsonl", store);

  const std::vector<std::string> query{"Tres.", "Uno.", "Dos."};
  const auto vectors = embed_batch(query, file_config(dir / "store.jsonl", 3));
  REQUIRE(vectors.size() == 3);
  CHECK(vectors[0] == vec({1, 1, 1}).normalized());
  CHECK(vectors[1] == vec({0.6, 0.8, 0}).normalized());
  CHECK(vectors[2] == vec({0, 0, 1}));
  for (const auto& v : vectors) CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("file-backed store errors") {
  test::TempDir dir;
  test::write_text(dir / "store.jsonl", store_record("Uno.", vec({1, 0})) + "\n");

  const std::vector<std::string> missing{"Uno.", "Otro."};
  try {
    embed_batch(missing, file_config(dir / "store.jsonl", 2));
    FAIL("expected MissingEmbedding");
  } catch (const MissingEmbedding& e) {
    CHECK(e.kind() == ErrorKind::MissingEmbedding);
    CHECK(e.sha256() == text_key("Otro."));
    CHECK(std::string(e.what()).find(text_key("Otro.")) != std::string::npos);
  }

  const std::vector<std::string> one{"Uno."};
  try {
    embed_batch(one, file_config(dir / "store.jsonl", 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }

  test::write_text(dir / "bad.jsonl", store_record("Uno.", vec({1, 0})) + "\n\n{not json\n");
  try {
    embed_batch(one, file_config(dir / "bad.jsonl", 2));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  try {
    embed_batch(one, file_config(dir / "absent.jsonl", 2));
    FAIL("expected ProviderUnavailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProviderUnavailable);
  }

  CHECK_THROWS_AS(embed_batch(std::vector<std::string>{}, file_config(dir / "store.jsonl", 2)),
                  Error);
}

TEST_CASE("HTTP provider splits requests into batches") {
  test::EmbeddingMock server(8);
  auto config = http_config(server, 8);
  config.batch_size = 32;
  const auto texts = numbered_texts(40);
  const auto vectors = embed_batch(texts, config);
  CHECK(server.request_count() == 2);
  CHECK(server.batch_sizes() == std::vector<std::size_t>{32, 8});
  REQUIRE(vectors.size() == 40);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    CHECK(vectors[i] == vec(test::EmbeddingMock::vector_for(texts[i], 8)).normalized());
  }
}

TEST_CASE("HTTP provider batch boundaries") {
  test::EmbeddingMock server(4);
  auto config = http_config(server, 4);
  config.batch_size = 10;
  embed_batch(numbered_texts(10), config);
  embed_batch(numbered_texts(1), config);
  embed_batch(numbered_texts(21), config);
  CHECK(server.batch_sizes() == std::vector<std::size_t>{10, 1, 10, 10, 1});
}

TEST_CASE("HTTP provider retries and then gives up") {
  test::EmbeddingMock server(4);
  auto config = http_config(server, 4);
  config.retries = 2;

  server.fail_next(2);
  CHECK(embed_batch(numbered_texts(3), config).size() == 3);
  CHECK(server.request_count() == 3);

  server.fail_always();
  try {
    embed_batch(numbered_texts(3), config);
    FAIL("expected ProviderUnavailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProviderUnavailable);
  }
  CHECK(server.request_count() == 6);
}

TEST_CASE("HTTP provider checks dimensions") {
  test::EmbeddingMock server(4);
  server.wrong_dims(5);
  try {
    embed_batch(numbered_texts(2), http_config(server, 4));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("unreachable HTTP provider") {
  EmbeddingProviderConfig config = EmbeddingProviderConfig::parse("http://127.0.0.1:1");
  config.expected_dims = 4;
  config.timeout_ms = 500;
  config.retries = 0;
  try {
    embed_batch(numbered_texts(1), config);
    FAIL("expected ProviderUnavailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProviderUnavailable);
  }
}
