#include "http_client.hpp"

#include "httplib.h"

#include <future>
#include <regex>

#include "typotex/errors.hpp"

namespace typotex::detail {

HttpOutcome post_json(const std::string& url, const std::string& json_body, std::chrono::milliseconds timeout,
                      const std::optional<std::string>& bearer_token) {
  static const std::regex kUrl(R"(^(https?://[^/?#]+)([^#]*)$)", std::regex::icase);
  std::smatch match;
  if (!std::regex_match(url, match, kUrl)) throw ConfigError("malformed service URL '" + url + "'");
  const std::string origin = match[1];
  const std::string path = match[2].length() > 0 ? std::string(match[2]) : "/";

  auto client = std::make_shared<httplib::Client>(origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client->set_connection_timeout(seconds.count(), micros.count());
  client->set_read_timeout(seconds.count(), micros.count());
  client->set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (bearer_token && !bearer_token->empty()) headers.emplace("Authorization", "Bearer " + *bearer_token);

  auto pending = std::async(std::launch::async, [client, path, headers, json_body] {
    return client->Post(path, headers, json_body, "application/json");
  });
  const auto started = std::chrono::steady_clock::now();
  if (pending.wait_for(timeout) != std::future_status::ready) {
    client->stop();
    pending.wait();
    HttpOutcome out;
    out.kind = HttpOutcome::Kind::timeout;
    out.error = "no response within " + std::to_string(timeout.count()) + " ms";
    return out;
  }

  httplib::Result result = pending.get();
  HttpOutcome out;
  if (!result) {
    const httplib::Error err = result.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && std::chrono::steady_clock::now() - started >= timeout);
    out.kind = timed_out ? HttpOutcome::Kind::timeout : HttpOutcome::Kind::unreachable;
    out.error = httplib::to_string(err);
    return out;
  }
  out.kind = HttpOutcome::Kind::ok;
  out.status = result->status;
  out.body = std::move(result->body);
  out.content_type = result->get_header_value("Content-Type");
  return out;
}

}  // namespace typotex::detail
