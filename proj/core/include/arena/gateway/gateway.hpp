#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <string>

#include "arena/gateway/backend.hpp"

namespace arena::gateway {

struct GatewayLimits {
  int max_concurrent = 4;
  /// Requests per rolling minute; 0 disables the budget.
  int requests_per_minute = 0;
};

/// The only path from the engine to a language model. Validates each request,
/// enforces the assessment temperature contract, bounds concurrency, and
/// appends exactly one ChatRecord per successful call to the caller's log.
class Gateway {
public:
  Gateway(std::shared_ptr<Backend> backend, std::shared_ptr<Clock> clock, GatewayLimits limits = {});

  std::string complete(const ChatRequest& req, RecordLog& log);

  BackendKind backend_kind() const { return backend_->kind(); }
  const GatewayLimits& limits() const noexcept { return limits_; }

private:
  void acquire();
  void release();

  std::shared_ptr<Backend> backend_;
  std::shared_ptr<Clock> clock_;
  GatewayLimits limits_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  std::deque<std::chrono::steady_clock::time_point> recent_;
};

/// Line-delimited JSON, one record per line: {"hash","request","response",...}.
void write_fixture(const std::string& path, const RecordLog& records);
RecordLog load_fixture(const std::string& path);

}  // namespace arena::gateway
