#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/game/types.hpp"

namespace arena::game {

struct SessionConfig {
  int rounds_per_encounter = 6;
  /// Player utterances allowed per round; nullopt means unlimited.
  std::optional<int> max_exchanges;
  PayoffMatrix payoff;
};

/// One player's run against the five single-trait agents.
///
/// All mutators validate before touching state, so a throwing call leaves the
/// session unchanged. Only the encounter currently in play accepts actions.
class GameSession {
public:
  GameSession(std::string session_id, std::string player_id,
              std::array<TraitId, 5> agent_order, bool consent,
              const SessionConfig& config, Millis created_ms);

  const std::string& session_id() const noexcept { return session_id_; }
  const std::string& player_id() const noexcept { return player_id_; }
  const std::array<TraitId, 5>& agent_order() const noexcept { return agent_order_; }
  const std::vector<Encounter>& encounters() const noexcept { return encounters_; }
  const SessionConfig& config() const noexcept { return config_; }
  bool consent() const noexcept { return consent_; }
  SessionStatus status() const noexcept { return status_; }
  Millis created_ms() const noexcept { return created_ms_; }
  std::optional<Millis> closed_ms() const noexcept { return closed_ms_; }
  Millis last_activity_ms() const noexcept { return last_activity_ms_; }

  /// Index of the encounter in play; nullopt once the session is closed.
  std::optional<std::size_t> current_encounter() const;
  /// The open round of the encounter in play.
  const Round* current_round() const;
  /// Encounter whose agent embodies `trait`.
  const Encounter& encounter_for(TraitId trait) const;

  void set_consent(bool consent) { consent_ = consent; }
  /// Throws ConsentError unless consent was given.
  void require_consent() const;

  Round append_player_utterance(std::size_t encounter_idx, std::string_view text, Millis now);
  Round append_agent_utterance(std::size_t encounter_idx, std::string_view text, Millis now);
  Round end_dialogue(std::size_t encounter_idx, Millis now);
  /// The agent commits before the player's decision is visible to it.
  Round commit_agent_decision(std::size_t encounter_idx, Decision d, Millis now);
  /// Resolves the round when the agent decision is already present. Returns
  /// the round as resolved (or pending, if the agent has not committed yet).
  Round submit_player_decision(std::size_t encounter_idx, Decision d, Millis now);

  void set_emotion(std::size_t encounter_idx, std::size_t round_pos, std::size_t utterance_pos,
                   EmotionLabel label);

  /// Closes an active session as Incomplete (idle timeout or abandonment).
  void close_incomplete(Millis now);

  nlohmann::json to_json() const;
  /// Validates every invariant; throws DataFileError on violation.
  static GameSession from_json(const nlohmann::json& j);

private:
  Round& open_round_checked(std::size_t encounter_idx);
  void advance_after_resolution(std::size_t encounter_idx, Millis now);
  void check_invariants() const;

  std::string session_id_;
  std::string player_id_;
  std::array<TraitId, 5> agent_order_;
  bool consent_ = false;
  SessionConfig config_;
  std::vector<Encounter> encounters_;
  SessionStatus status_ = SessionStatus::Active;
  Millis created_ms_ = 0;
  std::optional<Millis> closed_ms_;
  Millis last_activity_ms_ = 0;
};

/// True when `order` holds each of the five traits exactly once.
bool is_trait_permutation(const std::array<TraitId, 5>& order);

}  // namespace arena::game
