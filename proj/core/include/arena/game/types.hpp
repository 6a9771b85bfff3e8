#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/clock.hpp"
#include "arena/emotion.hpp"
#include "arena/traits.hpp"

namespace arena::game {

enum class Decision { Cooperate, Defect };

std::string_view decision_name(Decision d);  // "cooperate" / "defect"
std::optional<Decision> parse_decision(std::string_view text);

/// Points awarded per decision pair. Integer payoffs only.
struct PayoffMatrix {
  int cc_each = 2;
  int coop_when_betrayed = 0;
  int defect_when_betraying = 3;
  int dd_each = 0;

  /// Throws InputError on a negative entry.
  void validate() const;
  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

struct Outcome {
  int player_points = 0;
  int agent_points = 0;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Pure matrix lookup. Swapping both the decisions and the outputs is a symmetry.
Outcome resolve_round(Decision player, Decision agent, const PayoffMatrix& m = {});

enum class Speaker { Player, Agent };
std::string_view speaker_name(Speaker s);

struct Utterance {
  Speaker speaker = Speaker::Player;
  std::string text;
  Millis timestamp_ms = 0;
  std::optional<EmotionLabel> emotion;
};

enum class Phase { Dialogue, DecisionPending, Resolved };
std::string_view phase_name(Phase p);

struct Round {
  int index = 1;  // 1-based within the encounter
  std::vector<Utterance> dialogue;
  std::optional<Decision> player_decision;
  std::optional<Decision> agent_decision;
  std::optional<Outcome> outcome;
  Phase phase = Phase::Dialogue;

  /// Player utterance + agent reply pairs seen so far.
  int player_utterance_count() const;
};

struct Encounter {
  TraitId agent_trait = TraitId::Openness;
  int rounds_per_encounter = 6;
  std::vector<Round> rounds;

  bool complete() const;
  bool started() const { return !rounds.empty(); }
  int resolved_rounds() const;
  Outcome cumulative() const;
};

enum class SessionStatus { Active, Complete, Incomplete };
std::string_view status_name(SessionStatus s);

}  // namespace arena::game
