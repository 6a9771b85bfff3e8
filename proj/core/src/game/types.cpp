#include "arena/game/types.hpp"

#include <algorithm>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::game {

std::string_view decision_name(Decision d) {
  return d == Decision::Cooperate ? "cooperate" : "defect";
}

std::optional<Decision> parse_decision(std::string_view text) {
  const std::string s = text::to_lower(text::trim(text));
  if (s == "cooperate") return Decision::Cooperate;
  if (s == "defect") return Decision::Defect;
  return std::nullopt;
}

void PayoffMatrix::validate() const {
  if (cc_each < 0 || coop_when_betrayed < 0 || defect_when_betraying < 0 || dd_each < 0) {
    throw InputError("payoff matrix entries must be non-negative");
  }
}

Outcome resolve_round(Decision player, Decision agent, const PayoffMatrix& m) {
  if (player == Decision::Cooperate && agent == Decision::Cooperate) return {m.cc_each, m.cc_each};
  if (player == Decision::Defect && agent == Decision::Defect) return {m.dd_each, m.dd_each};
  if (player == Decision::Cooperate) return {m.coop_when_betrayed, m.defect_when_betraying};
  return {m.defect_when_betraying, m.coop_when_betrayed};
}

std::string_view speaker_name(Speaker s) { return s == Speaker::Player ? "player" : "agent"; }

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Dialogue: return "dialogue";
    case Phase::DecisionPending: return "decision_pending";
    case Phase::Resolved: return "resolved";
  }
  return "?";
}

std::string_view status_name(SessionStatus s) {
  switch (s) {
    case SessionStatus::Active: return "active";
    case SessionStatus::Complete: return "complete";
    case SessionStatus::Incomplete: return "incomplete";
  }
  return "?";
}

int Round::player_utterance_count() const {
  return static_cast<int>(std::count_if(dialogue.begin(), dialogue.end(),
                                        [](const Utterance& u) { return u.speaker == Speaker::Player; }));
}

bool Encounter::complete() const {
  return static_cast<int>(rounds.size()) == rounds_per_encounter &&
         std::all_of(rounds.begin(), rounds.end(), [](const Round& r) { return r.phase == Phase::Resolved; });
}

int Encounter::resolved_rounds() const {
  return static_cast<int>(std::count_if(rounds.begin(), rounds.end(),
                                        [](const Round& r) { return r.phase == Phase::Resolved; }));
}

Outcome Encounter::cumulative() const {
  Outcome total;
  for (const auto& r : rounds) {
    if (r.outcome) {
      total.player_points += r.outcome->player_points;
      total.agent_points += r.outcome->agent_points;
    }
  }
  return total;
}

}  // namespace arena::game
