#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "arena/game/types.hpp"
#include "arena/gateway/retry.hpp"
#include "arena/personas/persona_bank.hpp"
#include "arena/personas/prompt_catalog.hpp"

namespace arena::platform {

struct SimulatedPlayerSpec {
  std::string persona_text;
  std::uint64_t seed = 0;
  std::optional<TraitId> target_trait;
  bool target_high = true;
};

nlohmann::json to_json(const SimulatedPlayerSpec& s);
SimulatedPlayerSpec sim_spec_from_json(const nlohmann::json& j);

/// Stand-in persona that is extremely high (or low) in one trait, written in
/// the same style as the agent personas.
SimulatedPlayerSpec extreme_persona(const personas::PersonaBank& bank, TraitId trait, bool high, std::uint64_t seed);

struct SayAction {
  std::string text;
};
struct EndAction {};
using PlayerTurn = std::variant<SayAction, EndAction>;

struct SimPlayerSettings {
  std::string model_id = "gpt-4o";
  double temperature = 0.7;
  int max_messages = 3;
  gateway::RetryPolicy retry;
};

/// Parses "- Action: say|end" / "- Message: ..." replies.
PlayerTurn parse_sim_turn(const std::string& reply);
/// Parses "- Thought: ..." / "- Final Decision: cooperate|defect" replies.
game::Decision parse_sim_decision(const std::string& reply);

class SimulatedPlayer {
public:
  SimulatedPlayer(SimulatedPlayerSpec spec, std::shared_ptr<const personas::PromptCatalog> prompts, std::string rules,
                  SimPlayerSettings settings);

  /// Once the player has sent max_messages in the round it always ends.
  PlayerTurn next_turn(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& round) const;
  game::Decision decide(gateway::Gateway& gw, gateway::RecordLog& log, const game::Encounter& encounter,
                        const game::Round& round) const;

  const SimulatedPlayerSpec& spec() const noexcept { return spec_; }

private:
  gateway::ChatRequest make_request(std::string prompt) const;

  SimulatedPlayerSpec spec_;
  std::shared_ptr<const personas::PromptCatalog> prompts_;
  std::string rules_;
  SimPlayerSettings settings_;
};

}  // namespace arena::platform
