#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "arena/clock.hpp"
#include "arena/gateway/gateway.hpp"

namespace arena::platform {

/// Operator configuration. Every field has a default, so an empty JSON object
/// is a valid config file.
struct PlatformConfig {
  std::string data_dir;  // empty: resolved from the environment / build default

  std::string agent_model = "gpt-4o";
  double agent_temperature = 0.7;
  int context_token_budget = 6000;
  std::string perception_model = "gpt-4o";
  std::string assessor_model = "gpt-4o";
  std::string sim_player_model = "gpt-4o";
  double sim_player_temperature = 0.7;

  int rounds_per_encounter = 6;
  std::optional<int> max_exchanges;
  /// Messages a simulated player may send in one round before it must end.
  int sim_max_messages = 3;

  gateway::GatewayLimits limits;
  int assessment_parallelism = 4;
  int reasks = 3;

  std::string base_url = "https://api.openai.com/v1";
  std::string api_key_env = "ARENA_API_KEY";

  Millis session_ttl_ms = 30 * 60 * 1000;

  static PlatformConfig from_json(const nlohmann::json& j);
  static PlatformConfig load(const std::string& path);
  nlohmann::json to_json() const;
};

}  // namespace arena::platform
