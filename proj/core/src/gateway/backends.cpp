#include "arena/errors.hpp"
#include "arena/gateway/backend.hpp"

namespace arena::gateway {

ReplayBackend::ReplayBackend(const std::vector<ChatRecord>& records) {
  for (const auto& rec : records) {
    const auto hash = rec.hash.empty() ? request_hash(rec.request) : rec.hash;
    auto& slot = slots_[hash];
    if (!slot.cursor) slot.cursor = std::make_unique<std::atomic<std::size_t>>(0);
    slot.replies.push_back(BackendReply{rec.response_text, rec.usage, rec.latency_ms});
    ++total_;
  }
}

BackendReply ReplayBackend::send(const ChatRequest& req) {
  const auto it = slots_.find(request_hash(req));
  if (it == slots_.end()) {
    throw ReplayMissError("no recorded response for " + std::string(purpose_name(req.purpose)) + " request " +
                          request_hash(req).substr(0, 12));
  }
  const auto& replies = it->second.replies;
  const auto n = it->second.cursor->fetch_add(1);
  return replies[std::min(n, replies.size() - 1)];
}

MockBackend::MockBackend(Responder responder) : responder_(std::move(responder)) {}

BackendReply MockBackend::send(const ChatRequest& req) {
  ++calls_;
  std::string text;
  bool forced = false;
  {
    std::lock_guard lock(mu_);
    auto& q = forced_[req.purpose];
    if (!q.empty()) {
      text = std::move(q.front());
      q.pop_front();
      forced = true;
    }
  }
  if (!forced) {
    if (!responder_) throw GatewayError("mock backend has no scripted response for " + std::string(purpose_name(req.purpose)));
    text = responder_(req);
  }
  std::int64_t prompt_tokens = 0;
  for (const auto& m : req.messages) prompt_tokens += estimate_tokens(m.content);
  return BackendReply{text, TokenUsage{prompt_tokens, estimate_tokens(text)}, 0};
}

void MockBackend::push(Purpose purpose, std::string response) {
  std::lock_guard lock(mu_);
  forced_[purpose].push_back(std::move(response));
}

}  // namespace arena::gateway
