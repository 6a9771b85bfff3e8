#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arena/cognition/agent_state.hpp"
#include "arena/gateway/retry.hpp"
#include "arena/personas/role_prompt.hpp"

namespace arena::cognition {

struct AgentSettings {
  std::string model_id = "gpt-4o";
  double temperature = 0.7;
  /// Estimated tokens allowed for a chat request before context is compacted.
  std::int64_t context_token_budget = 6000;
  gateway::RetryPolicy retry;
  /// Optional content policy for replies; throw ModerationError to reject.
  std::function<void(const std::string&)> moderation;
};

/// One personality-conditioned agent. Holds only immutable configuration; the
/// per-encounter AgentState is passed in, so one agent can never read another
/// agent's memories.
class Agent {
public:
  Agent(personas::PersonaSpec persona, std::shared_ptr<const personas::PromptCatalog> prompts,
        const std::string& rules, AgentSettings settings);

  const personas::PersonaSpec& persona() const noexcept { return persona_; }
  const std::string& role_prompt() const noexcept { return role_prompt_; }
  const AgentSettings& settings() const noexcept { return settings_; }

  /// Chat context: role prompt, all memory summaries, latest reflection and
  /// plan, then the current round's dialogue. Over budget, the reflection and
  /// plan are dropped.
  std::vector<gateway::Message> chat_messages(const AgentState& state, const game::Round& round) const;

  std::string agent_chat_reply(gateway::Gateway& gw, gateway::RecordLog& log, const AgentState& state,
                               const game::Round& round) const;

  MemoryEntry summarize_round(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& resolved,
                              const std::string& game_status) const;

  Reflection reflect(gateway::Gateway& gw, gateway::RecordLog& log, const AgentState& state,
                     const game::Round& resolved, const std::string& game_status) const;

  /// Must run before the player's decision for this round is known; only the
  /// round's dialogue is read.
  AgentTurnOutput decide_and_plan(gateway::Gateway& gw, gateway::RecordLog& log, const AgentState& state,
                                  const game::Round& round, const std::string& game_history) const;

  gateway::ChatRequest make_request(gateway::Purpose purpose, std::vector<gateway::Message> messages) const;

private:
  personas::PersonaSpec persona_;
  std::shared_ptr<const personas::PromptCatalog> prompts_;
  std::string role_prompt_;
  AgentSettings settings_;
};

}  // namespace arena::cognition
