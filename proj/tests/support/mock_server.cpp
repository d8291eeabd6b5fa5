#include "support/mock_server.hpp"

#include <httplib.h>

#include <functional>
#include <json.hpp>
#include <random>
#include <stdexcept>

namespace lefa::test {

MockServer::MockServer() : server_(std::make_unique<httplib::Server>()) {}

MockServer::~MockServer() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockServer::url() const { return "http://127.0.0.1:" + std::to_string(port_); }

void MockServer::start() {
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("mock server could not bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

GenerationMock::GenerationMock(Responder responder) : responder_(std::move(responder)) {
  server().Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard lock(mutex_);
      ++requests_;
      raw_requests_.push_back(req.body);
    }
    if (failures_left_ > 0) {
      --failures_left_;
      res.status = 500;
      res.set_content(R"({"error":"scripted failure"})", "application/json");
      return;
    }
    std::string prompt;
    try {
      prompt = nlohmann::json::parse(req.body).at("prompt").get<std::string>();
    } catch (const std::exception&) {
      res.status = 400;
      return;
    }
    {
      std::lock_guard lock(mutex_);
      prompts_.push_back(prompt);
    }
    if (malformed_) {
      res.set_content(R"({"unexpected":true})", "application/json");
      return;
    }
    nlohmann::json body{{"text", responder_(prompt)}};
    res.set_content(body.dump(), "application/json");
  });
  start();
}

std::vector<std::string> GenerationMock::prompts() const {
  std::lock_guard lock(mutex_);
  return prompts_;
}

std::vector<std::string> GenerationMock::raw_requests() const {
  std::lock_guard lock(mutex_);
  return raw_requests_;
}

std::size_t GenerationMock::request_count() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

EmbeddingMock::EmbeddingMock(std::size_t dims) : dims_(dims), reply_dims_(dims) {
  server().Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard lock(mutex_);
      ++requests_;
    }
    if (failures_left_ > 0) {
      --failures_left_;
      res.status = 503;
      return;
    }
    std::vector<std::string> texts;
    try {
      texts = nlohmann::json::parse(req.body).at("texts").get<std::vector<std::string>>();
    } catch (const std::exception&) {
      res.status = 400;
      return;
    }
    {
      std::lock_guard lock(mutex_);
      batch_sizes_.push_back(texts.size());
    }
    nlohmann::json vectors = nlohmann::json::array();
    for (const std::string& text : texts) vectors.push_back(vector_for(text, reply_dims_));
    res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
  });
  start();
}

std::vector<std::size_t> EmbeddingMock::batch_sizes() const {
  std::lock_guard lock(mutex_);
  return batch_sizes_;
}

std::size_t EmbeddingMock::request_count() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::vector<double> EmbeddingMock::vector_for(const std::string& text, std::size_t dims) {
  std::mt19937_64 rng(std::hash<std::string>{}(text));
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> out(dims);
  for (double& v : out) v = value(rng);
  return out;
}

}  // namespace lefa::test
