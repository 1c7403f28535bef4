#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace typotex::detail {

struct HttpOutcome {
  enum class Kind { ok, timeout, unreachable };
  Kind kind = Kind::unreachable;
  int status = 0;
  std::string body;
  std::string content_type;
  std::string error;
};

/// POSTs `json_body` to an http:// or https:// URL. The whole exchange is
/// bounded by `timeout`; on expiry the connection is shut down and the
/// outcome is Kind::timeout. Throws ConfigError for malformed URLs.
HttpOutcome post_json(const std::string& url, const std::string& json_body, std::chrono::milliseconds timeout,
                      const std::optional<std::string>& bearer_token);

}  // namespace typotex::detail
