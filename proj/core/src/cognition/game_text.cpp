#include "arena/cognition/game_text.hpp"

namespace arena::cognition {

namespace {

std::string format_dialogue(const game::Round& round, const char* agent_label) {
  if (round.dialogue.empty()) return "(no dialogue)";
  std::string out;
  for (const auto& u : round.dialogue) {
    if (!out.empty()) out += '\n';
    out += u.speaker == game::Speaker::Player ? "Player: " : std::string(agent_label) + ": ";
    out += u.text;
  }
  return out;
}

}  // namespace

std::string format_dialogue_for_agent(const game::Round& round) { return format_dialogue(round, "You"); }

std::string format_dialogue_neutral(const game::Round& round) { return format_dialogue(round, "Agent"); }

std::string game_status_text(const game::Encounter& encounter, int up_to_round) {
  std::string out;
  int mine = 0;
  int theirs = 0;
  for (const auto& r : encounter.rounds) {
    if (r.index > up_to_round || !r.outcome) continue;
    mine += r.outcome->agent_points;
    theirs += r.outcome->player_points;
    if (!out.empty()) out += '\n';
    out += "Round " + std::to_string(r.index) + ": you chose " + std::string(game::decision_name(*r.agent_decision)) +
           ", the player chose " + std::string(game::decision_name(*r.player_decision)) + " (you +" +
           std::to_string(r.outcome->agent_points) + ", player +" + std::to_string(r.outcome->player_points) + ").";
  }
  if (out.empty()) return "No rounds have been played yet. Current score: you 0, player 0.";
  out += "\nCurrent score: you " + std::to_string(mine) + ", player " + std::to_string(theirs) + ".";
  return out;
}

}  // namespace arena::cognition
