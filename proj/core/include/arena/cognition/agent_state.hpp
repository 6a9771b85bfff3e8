#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/game/types.hpp"
#include "arena/traits.hpp"

namespace arena::cognition {

struct MemoryEntry {
  int round_index = 0;
  std::string summary_text;
  std::string game_status_snapshot;
  friend bool operator==(const MemoryEntry&, const MemoryEntry&) = default;
};

struct Reflection {
  int round_index = 0;
  std::string insight;
  std::string thoughts;
  std::string action;
  std::string text;  // full rendered reflection
  friend bool operator==(const Reflection&, const Reflection&) = default;
};

struct AgentTurnOutput {
  game::Decision decision = game::Decision::Cooperate;
  std::string decision_process_text;
  std::string long_term_plan;
  friend bool operator==(const AgentTurnOutput&, const AgentTurnOutput&) = default;
};

/// Cognition state of the agent in one encounter. Append-only; never shared
/// between agents.
struct AgentState {
  TraitId trait = TraitId::Openness;
  std::vector<MemoryEntry> memories;
  std::vector<Reflection> reflections;
  std::vector<AgentTurnOutput> plans;

  const Reflection* latest_reflection() const { return reflections.empty() ? nullptr : &reflections.back(); }
  const AgentTurnOutput* latest_plan() const { return plans.empty() ? nullptr : &plans.back(); }

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

nlohmann::json to_json(const AgentState& s);
AgentState agent_state_from_json(const nlohmann::json& j);

}  // namespace arena::cognition
