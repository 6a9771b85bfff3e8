#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "arena/gateway/chat.hpp"

namespace arena::gateway {

struct BackendReply {
  std::string text;
  TokenUsage usage;
  std::int64_t latency_ms = 0;
};

class Backend {
public:
  virtual ~Backend() = default;
  virtual BackendKind kind() const = 0;
  virtual BackendReply send(const ChatRequest& req) = 0;
};

struct LiveConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  bool require_api_key = true;
  std::chrono::seconds timeout{60};
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{500};
  /// Injected for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// HTTP JSON chat-completions client (POST {base_url}/chat/completions).
/// Retries transport failures, 5xx and 429 with exponential backoff.
class LiveBackend final : public Backend {
public:
  explicit LiveBackend(LiveConfig config);
  BackendKind kind() const override { return BackendKind::Live; }
  BackendReply send(const ChatRequest& req) override;

private:
  LiveConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

/// Answers from recorded fixtures keyed by request hash. Repeated identical
/// requests consume recorded responses in order; the last one repeats.
class ReplayBackend final : public Backend {
public:
  explicit ReplayBackend(const std::vector<ChatRecord>& records);
  BackendKind kind() const override { return BackendKind::Replay; }
  BackendReply send(const ChatRequest& req) override;

  std::size_t entry_count() const noexcept { return total_; }

private:
  struct Slot {
    std::vector<BackendReply> replies;
    std::unique_ptr<std::atomic<std::size_t>> cursor;
  };
  std::map<std::string, Slot> slots_;
  std::size_t total_ = 0;
};

/// Scripted backend. Forced responses queued with push() are served first
/// (per purpose), then the responder function answers.
class MockBackend final : public Backend {
public:
  using Responder = std::function<std::string(const ChatRequest&)>;

  explicit MockBackend(Responder responder);
  BackendKind kind() const override { return BackendKind::Mock; }
  BackendReply send(const ChatRequest& req) override;

  void push(Purpose purpose, std::string response);
  std::size_t calls() const noexcept { return calls_.load(); }

private:
  Responder responder_;
  std::mutex mu_;
  std::map<Purpose, std::deque<std::string>> forced_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace arena::gateway
