#include <chrono>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/gateway/backend.hpp"

namespace arena::gateway {

namespace {

struct Target {
  std::string scheme_host_port;
  std::string path_prefix;
};

Target split_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InputError("base_url must include a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  Target t;
  t.scheme_host_port = url.substr(0, path_start);
  t.path_prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!t.path_prefix.empty() && t.path_prefix.back() == '/') t.path_prefix.pop_back();
  return t;
}

}  // namespace

LiveBackend::LiveBackend(LiveConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) throw InputError("max_attempts must be at least 1");
  const auto t = split_base_url(config_.base_url);
  scheme_host_port_ = t.scheme_host_port;
  path_prefix_ = t.path_prefix;
  if (!config_.sleep) config_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

BackendReply LiveBackend::send(const ChatRequest& req) {
  if (config_.require_api_key && config_.api_key.empty()) {
    throw AuthError("no API key configured for the live backend (set ARENA_API_KEY)");
  }
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : req.messages) messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  nlohmann::json body{{"model", req.model_id}, {"messages", std::move(messages)}, {"temperature", req.temperature}};
  if (req.max_tokens) body["max_tokens"] = *req.max_tokens;
  const std::string payload = body.dump();

  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string last_error;
  bool last_was_rate_limit = false;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(path_prefix_ + "/chat/completions", headers, payload, "application/json");
    const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      last_was_rate_limit = false;
    } else if (res->status == 401 || res->status == 403) {
      throw AuthError("provider rejected credentials (HTTP " + std::to_string(res->status) + ")");
    } else if (res->status == 429) {
      last_error = "rate limited (HTTP 429)";
      last_was_rate_limit = true;
    } else if (res->status >= 500) {
      last_error = "provider error HTTP " + std::to_string(res->status);
      last_was_rate_limit = false;
    } else if (res->status != 200) {
      throw TransportError("provider returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 300));
    } else {
      try {
        const auto j = nlohmann::json::parse(res->body);
        BackendReply reply;
        reply.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        if (j.contains("usage")) {
          reply.usage.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
          reply.usage.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
        }
        reply.latency_ms = latency.count();
        return reply;
      } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("unparseable completion response: ") + e.what());
      }
    }
    if (attempt < config_.max_attempts) config_.sleep(config_.backoff_base * (1 << (attempt - 1)));
  }
  if (last_was_rate_limit) throw RateLimitError(last_error + " after " + std::to_string(config_.max_attempts) + " attempts");
  throw TransportError(last_error + " after " + std::to_string(config_.max_attempts) + " attempts");
}

}  // namespace arena::gateway
