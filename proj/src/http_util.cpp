#include "http_util.hpp"

#include <httplib.h>

#include "lefa/error.hpp"

namespace lefa::detail {

Endpoint parse_endpoint(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme) || url.size() == kScheme.size()) {
    throw Error(ErrorKind::InvalidArgument, "endpoint must be http://host[:port][/path]: " +
                                                std::string(url));
  }
  std::size_t slash = url.find('/', kScheme.size());
  Endpoint endpoint;
  endpoint.scheme_host_port = std::string(url.substr(0, slash));
  if (slash != std::string_view::npos) {
    endpoint.path_prefix = std::string(url.substr(slash));
    while (!endpoint.path_prefix.empty() && endpoint.path_prefix.back() == '/') {
      endpoint.path_prefix.pop_back();
    }
  }
  return endpoint;
}

HttpResult post_json(const Endpoint& endpoint, std::string_view path, const std::string& body,
                     int timeout_ms) {
  httplib::Client client(endpoint.scheme_host_port);
  const auto seconds = timeout_ms / 1000;
  const auto micros = (timeout_ms % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  const std::string target = endpoint.path_prefix + std::string(path);
  auto response = client.Post(target, body, "application/json");
  if (!response) return {0, {}, httplib::to_string(response.error())};
  return {response->status, response->body, {}};
}

HttpResult post_json_with_retries(const Endpoint& endpoint, std::string_view path,
                                  const std::string& body, int timeout_ms, int retries) {
  HttpResult result;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    result = post_json(endpoint, path, body, timeout_ms);
    if (result.status == 200) break;
  }
  return result;
}

}  // namespace lefa::detail
