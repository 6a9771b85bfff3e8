#pragma once

#include <string>

#include "arena/game/types.hpp"

namespace arena::cognition {

/// "Player: ...\nYou: ..." from the agent's point of view.
std::string format_dialogue_for_agent(const game::Round& round);
/// Neutral third-person transcript ("Player: ...\nAgent: ...").
std::string format_dialogue_neutral(const game::Round& round);

/// Decisions, per-round points and running totals of every resolved round
/// with index <= up_to_round, written from the agent's point of view.
std::string game_status_text(const game::Encounter& encounter, int up_to_round);

}  // namespace arena::cognition
