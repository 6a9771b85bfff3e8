#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "arena/platform/runtime.hpp"

namespace arena::platform {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// HTTP status for a typed error code ("phase_error" -> 409, ...).
int status_for_error(const std::string& code);

/// Owns live sessions, expiring idle ones as Incomplete after the configured
/// time-to-live.
class SessionStore {
public:
  explicit SessionStore(Millis ttl_ms) : ttl_ms_(ttl_ms) {}

  void put(std::shared_ptr<SessionRuntime> rt);
  /// NotFound for unknown ids.
  std::shared_ptr<SessionRuntime> get(const std::string& id) const;
  /// Closes sessions idle for longer than the TTL; returns how many.
  std::size_t expire_idle(Millis now);
  std::size_t size() const;

private:
  mutable std::mutex mu_;
  Millis ttl_ms_;
  std::map<std::string, std::shared_ptr<SessionRuntime>> sessions_;
};

/// Transport-independent JSON API. Routes:
///
///   POST /sessions                      {player_id, consent, agent_order?}
///   GET  /sessions/{id}/view
///   GET  /sessions/{id}/events?since=N
///   POST /sessions/{id}/messages        {text}
///   POST /sessions/{id}/end_dialogue
///   POST /sessions/{id}/decision        {decision}
///   POST /sessions/{id}/consent         {consent}
///   POST /sessions/{id}/assessment      {methods?, conditions?, bundles?}
///   GET  /sessions/{id}/assessment
///
/// Errors come back as {"error": {"code", "message"}} with a 4xx/5xx status.
class ApiService {
public:
  ApiService(std::shared_ptr<const Resources> resources, std::shared_ptr<gateway::Gateway> gateway,
             std::shared_ptr<Clock> clock, std::uint64_t seed = 0);

  ApiResponse handle(const std::string& method, const std::string& target, const std::string& body);

  SessionStore& store() noexcept { return store_; }
  /// Optional directory where closed sessions are archived.
  void set_archive_dir(std::string dir) { archive_dir_ = std::move(dir); }

private:
  ApiResponse route(const std::string& method, const std::string& path, const std::map<std::string, std::string>& query,
                    const nlohmann::json& body);
  ApiResponse create_session(const nlohmann::json& body);
  void maybe_archive(SessionRuntime& rt);

  std::shared_ptr<const Resources> resources_;
  std::shared_ptr<gateway::Gateway> gateway_;
  std::shared_ptr<Clock> clock_;
  SessionStore store_;
  std::mutex id_mu_;
  std::mt19937_64 rng_;
  std::uint64_t counter_ = 0;
  std::string archive_dir_;
};

/// HTTP transport for ApiService. bind() then listen() blocks until stop()
/// is called from another thread.
class HttpServer {
public:
  explicit HttpServer(ApiService& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; IoError on failure.
  int bind(const std::string& host, int port);
  void listen();
  void wait_until_ready();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking HTTP server on host:port exposing ApiService.
void serve_http(ApiService& api, const std::string& host, int port);

}  // namespace arena::platform
