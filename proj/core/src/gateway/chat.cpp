#include "arena/gateway/chat.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "arena/errors.hpp"

namespace arena::gateway {

using nlohmann::json;

std::string_view role_name(Role r) {
  switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "?";
}

namespace {

constexpr std::array<Purpose, 9> kPurposes = {
    Purpose::AgentChat, Purpose::Memory,       Purpose::Reflection, Purpose::Decide,         Purpose::Emotion,
    Purpose::Traits,    Purpose::DirectAssess, Purpose::QueAssess,  Purpose::SimulatedPlayer};

Role role_from(const std::string& s) {
  for (auto r : {Role::System, Role::User, Role::Assistant}) {
    if (role_name(r) == s) return r;
  }
  throw DataFileError("unknown message role " + s);
}

}  // namespace

std::string_view purpose_name(Purpose p) {
  switch (p) {
    case Purpose::AgentChat: return "AgentChat";
    case Purpose::Memory: return "Memory";
    case Purpose::Reflection: return "Reflection";
    case Purpose::Decide: return "Decide";
    case Purpose::Emotion: return "Emotion";
    case Purpose::Traits: return "Traits";
    case Purpose::DirectAssess: return "DirectAssess";
    case Purpose::QueAssess: return "QueAssess";
    case Purpose::SimulatedPlayer: return "SimulatedPlayer";
  }
  return "?";
}

std::optional<Purpose> parse_purpose(std::string_view s) {
  for (auto p : kPurposes) {
    if (purpose_name(p) == s) return p;
  }
  return std::nullopt;
}

bool is_assessment(Purpose p) { return p == Purpose::DirectAssess || p == Purpose::QueAssess; }

void ChatRequest::validate() const {
  if (model_id.empty()) throw InputError("chat request needs a model id");
  if (messages.empty()) throw InputError("chat request needs at least one message");
  if (messages.front().role != Role::System) throw InputError("first message must have the system role");
  if (!(temperature >= 0.0 && temperature <= 2.0)) throw InputError("temperature must lie in [0, 2]");
  if (max_tokens && *max_tokens <= 0) throw InputError("max_tokens must be positive");
  if (is_assessment(purpose) && temperature != 0.0) {
    throw TemperatureContractError(std::string(purpose_name(purpose)) + " requests must use temperature 0, got " +
                                   std::to_string(temperature));
  }
}

std::string canonical_request(const ChatRequest& req) {
  json messages = json::array();
  for (const auto& m : req.messages) messages.push_back({{"content", m.content}, {"role", role_name(m.role)}});
  json j{{"model_id", req.model_id}, {"messages", std::move(messages)}, {"temperature", req.temperature}};
  return j.dump();
}

std::string request_hash(const ChatRequest& req) {
  const std::string canon = canonical_request(req);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(canon.data(), canon.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw GatewayError("sha256 digest failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string_view backend_name(BackendKind k) {
  switch (k) {
    case BackendKind::Live: return "live";
    case BackendKind::Replay: return "replay";
    case BackendKind::Mock: return "mock";
  }
  return "?";
}

json to_json(const ChatRequest& req) {
  json messages = json::array();
  for (const auto& m : req.messages) messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  json j{{"model_id", req.model_id},
         {"messages", std::move(messages)},
         {"temperature", req.temperature},
         {"purpose", purpose_name(req.purpose)}};
  if (req.max_tokens) j["max_tokens"] = *req.max_tokens;
  return j;
}

ChatRequest request_from_json(const json& j) {
  ChatRequest req;
  req.model_id = j.at("model_id").get<std::string>();
  for (const auto& m : j.at("messages")) {
    req.messages.push_back(Message{role_from(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
  }
  req.temperature = j.at("temperature").get<double>();
  if (j.contains("max_tokens")) req.max_tokens = j["max_tokens"].get<int>();
  const auto p = parse_purpose(j.at("purpose").get<std::string>());
  if (!p) throw DataFileError("unknown purpose tag " + j["purpose"].dump());
  req.purpose = *p;
  return req;
}

json to_json(const ChatRecord& rec) {
  return json{{"hash", rec.hash},
              {"request", to_json(rec.request)},
              {"response", rec.response_text},
              {"latency_ms", rec.latency_ms},
              {"usage", {{"prompt_tokens", rec.usage.prompt_tokens}, {"completion_tokens", rec.usage.completion_tokens}}},
              {"backend", backend_name(rec.backend)},
              {"timestamp_ms", rec.timestamp_ms}};
}

ChatRecord record_from_json(const json& j) {
  try {
    ChatRecord rec;
    rec.request = request_from_json(j.at("request"));
    rec.hash = j.value("hash", std::string{});
    const auto computed = request_hash(rec.request);
    if (rec.hash.empty()) rec.hash = computed;
    if (rec.hash != computed) throw DataFileError("record hash does not match its request");
    rec.response_text = j.at("response").get<std::string>();
    rec.latency_ms = j.value("latency_ms", std::int64_t{0});
    if (j.contains("usage")) {
      rec.usage.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
      rec.usage.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
    }
    const auto backend = j.value("backend", std::string("live"));
    if (backend == "live") rec.backend = BackendKind::Live;
    else if (backend == "replay") rec.backend = BackendKind::Replay;
    else if (backend == "mock") rec.backend = BackendKind::Mock;
    else throw DataFileError("unknown backend " + backend);
    rec.timestamp_ms = j.value("timestamp_ms", Millis{0});
    return rec;
  } catch (const json::exception& e) {
    throw DataFileError(std::string("malformed chat record: ") + e.what());
  }
}

std::int64_t estimate_tokens(std::string_view text) {
  return static_cast<std::int64_t>((text.size() + 3) / 4);
}

}  // namespace arena::gateway
