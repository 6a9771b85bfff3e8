#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/clock.hpp"

namespace arena::gateway {

enum class Role { System, User, Assistant };
std::string_view role_name(Role r);

struct Message {
  Role role = Role::User;
  std::string content;
  friend bool operator==(const Message&, const Message&) = default;
};

enum class Purpose {
  AgentChat,
  Memory,
  Reflection,
  Decide,
  Emotion,
  Traits,
  DirectAssess,
  QueAssess,
  SimulatedPlayer,
};
std::string_view purpose_name(Purpose p);
std::optional<Purpose> parse_purpose(std::string_view s);
/// Assessment calls must run at temperature 0.
bool is_assessment(Purpose p);

struct ChatRequest {
  std::string model_id;
  std::vector<Message> messages;
  double temperature = 0.0;
  std::optional<int> max_tokens;
  Purpose purpose = Purpose::AgentChat;

  /// Throws InputError for a structurally invalid request and
  /// TemperatureContractError for an assessment call at temperature != 0.
  void validate() const;

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

/// Compact JSON over exactly (model_id, messages, temperature) with sorted
/// keys. Stable across processes; message order is significant.
std::string canonical_request(const ChatRequest& req);
/// Lower-case hex SHA-256 of canonical_request().
std::string request_hash(const ChatRequest& req);

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

enum class BackendKind { Live, Replay, Mock };
std::string_view backend_name(BackendKind k);

struct ChatRecord {
  ChatRequest request;
  std::string hash;
  std::string response_text;
  std::int64_t latency_ms = 0;
  TokenUsage usage;
  BackendKind backend = BackendKind::Mock;
  Millis timestamp_ms = 0;

  friend bool operator==(const ChatRecord&, const ChatRecord&) = default;
};

nlohmann::json to_json(const ChatRequest& req);
ChatRequest request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChatRecord& rec);
ChatRecord record_from_json(const nlohmann::json& j);

/// Ordered list of records produced by one unit of work. Not synchronized:
/// concurrent tasks each keep their own log and merge in a fixed order.
using RecordLog = std::vector<ChatRecord>;

/// Rough token estimate for budgeting (4 characters per token).
std::int64_t estimate_tokens(std::string_view text);

}  // namespace arena::gateway
