#include "arena/platform/config.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::platform {

using nlohmann::json;

PlatformConfig PlatformConfig::from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const char* kKnown[] = {"data_dir",          "agent_model",         "agent_temperature",
                                 "context_token_budget", "perception_model", "assessor_model",
                                 "sim_player_model",  "sim_player_temperature", "rounds_per_encounter",
                                 "max_exchanges",     "sim_max_messages",    "max_concurrent",
                                 "requests_per_minute", "assessment_parallelism", "reasks",
                                 "base_url",          "api_key_env",         "session_ttl_ms"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw InputError("unknown config key '" + key + "'");
    }
  }
  PlatformConfig c;
  try {
    c.data_dir = j.value("data_dir", c.data_dir);
    c.agent_model = j.value("agent_model", c.agent_model);
    c.agent_temperature = j.value("agent_temperature", c.agent_temperature);
    c.context_token_budget = j.value("context_token_budget", c.context_token_budget);
    c.perception_model = j.value("perception_model", c.perception_model);
    c.assessor_model = j.value("assessor_model", c.assessor_model);
    c.sim_player_model = j.value("sim_player_model", c.sim_player_model);
    c.sim_player_temperature = j.value("sim_player_temperature", c.sim_player_temperature);
    c.rounds_per_encounter = j.value("rounds_per_encounter", c.rounds_per_encounter);
    if (j.contains("max_exchanges") && !j["max_exchanges"].is_null()) c.max_exchanges = j["max_exchanges"].get<int>();
    c.sim_max_messages = j.value("sim_max_messages", c.sim_max_messages);
    c.limits.max_concurrent = j.value("max_concurrent", c.limits.max_concurrent);
    c.limits.requests_per_minute = j.value("requests_per_minute", c.limits.requests_per_minute);
    c.assessment_parallelism = j.value("assessment_parallelism", c.assessment_parallelism);
    c.reasks = j.value("reasks", c.reasks);
    c.base_url = j.value("base_url", c.base_url);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.session_ttl_ms = j.value("session_ttl_ms", c.session_ttl_ms);
  } catch (const json::exception& e) {
    throw InputError(std::string("config value has the wrong type: ") + e.what());
  }
  if (c.rounds_per_encounter < 1) throw InputError("rounds_per_encounter must be positive");
  if (c.max_exchanges && *c.max_exchanges < 1) throw InputError("max_exchanges must be positive");
  if (c.sim_max_messages < 1) throw InputError("sim_max_messages must be positive");
  if (c.limits.max_concurrent < 1) throw InputError("max_concurrent must be positive");
  if (c.assessment_parallelism < 1) throw InputError("assessment_parallelism must be positive");
  if (c.reasks < 0) throw InputError("reasks must not be negative");
  if (c.session_ttl_ms <= 0) throw InputError("session_ttl_ms must be positive");
  return c;
}

PlatformConfig PlatformConfig::load(const std::string& path) {
  try {
    return from_json(json::parse(text::read_file(path)));
  } catch (const json::parse_error& e) {
    throw InputError("config " + path + " is not valid JSON: " + e.what());
  }
}

json PlatformConfig::to_json() const {
  json j{{"data_dir", data_dir},
         {"agent_model", agent_model},
         {"agent_temperature", agent_temperature},
         {"context_token_budget", context_token_budget},
         {"perception_model", perception_model},
         {"assessor_model", assessor_model},
         {"sim_player_model", sim_player_model},
         {"sim_player_temperature", sim_player_temperature},
         {"rounds_per_encounter", rounds_per_encounter},
         {"sim_max_messages", sim_max_messages},
         {"max_concurrent", limits.max_concurrent},
         {"requests_per_minute", limits.requests_per_minute},
         {"assessment_parallelism", assessment_parallelism},
         {"reasks", reasks},
         {"base_url", base_url},
         {"api_key_env", api_key_env},
         {"session_ttl_ms", session_ttl_ms}};
  j["max_exchanges"] = max_exchanges ? json(*max_exchanges) : json(nullptr);
  return j;
}

}  // namespace arena::platform
