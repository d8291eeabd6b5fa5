#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace lefa::detail {

struct Endpoint {
  std::string scheme_host_port;  // "http://127.0.0.1:8080"
  std::string path_prefix;       // "" or "/api"
};

/// Throws InvalidArgument for anything that is not http://host[:port][/prefix].
Endpoint parse_endpoint(std::string_view url);

struct HttpResult {
  int status = 0;  // 0 when the transport failed
  std::string body;
  std::string error;
};

/// POSTs JSON once. Never throws on transport errors.
HttpResult post_json(const Endpoint& endpoint, std::string_view path, const std::string& body,
                     int timeout_ms);

/// Retries until a 200 response or `retries` extra attempts are spent. The
/// last result is returned either way.
HttpResult post_json_with_retries(const Endpoint& endpoint, std::string_view path,
                                  const std::string& body, int timeout_ms, int retries);

}  // namespace lefa::detail
