#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/cognition/agent_state.hpp"
#include "arena/emotion.hpp"
#include "arena/game/types.hpp"

namespace arena::perception {

struct EmotionAnnotation {
  std::string utterance_ref;  // "e<encounter>-r<round>-u<position>"
  std::size_t utterance_pos = 0;
  std::string sentence;
  EmotionLabel label = EmotionLabel::Neutral;
  std::string analysis_text;
  friend bool operator==(const EmotionAnnotation&, const EmotionAnnotation&) = default;
};

struct TraitObservation {
  int round_index = 0;
  std::string observed_behavior;
  std::vector<std::string> inferred_traits;
  std::string reason;
  friend bool operator==(const TraitObservation&, const TraitObservation&) = default;
};

/// Perception output for one resolved round: an emotion label for each player
/// utterance and one trait observation.
struct PerceptionRecord {
  std::size_t encounter_pos = 0;  // position in the session's agent order
  int round_index = 0;
  std::vector<EmotionAnnotation> emotions;
  TraitObservation traits;
  friend bool operator==(const PerceptionRecord&, const PerceptionRecord&) = default;
};

nlohmann::json to_json(const PerceptionRecord& r);
PerceptionRecord perception_record_from_json(const nlohmann::json& j);

std::string utterance_ref(std::size_t encounter_pos, int round_index, std::size_t utterance_pos);

/// Which text channels feed an assessment: dialogue Text, Behavior log,
/// fine-grained Personality observations, Emotion labels.
struct ChannelBundle {
  bool include_text = true;
  bool include_behavior = true;
  bool include_traits = false;
  bool include_emotion = false;

  /// Only T+B, T+B+P and T+B+P+E are supported; anything else is a BundleError.
  void validate() const;
  /// "tb" | "tbp" | "tbpe"
  std::string token() const;
  /// "T+B" | "T+B+P" | "T+B+P+E"
  std::string label() const;
  static ChannelBundle parse(std::string_view token);

  static ChannelBundle text_behavior() { return {true, true, false, false}; }
  static ChannelBundle text_behavior_traits() { return {true, true, true, false}; }
  static ChannelBundle all() { return {true, true, true, true}; }

  friend bool operator==(const ChannelBundle&, const ChannelBundle&) = default;
  friend auto operator<=>(const ChannelBundle&, const ChannelBundle&) = default;
};

/// Frozen view of one encounter handed to assemble_channels.
struct EncounterData {
  std::size_t position = 0;  // 0-based position in agent order
  const game::Encounter* encounter = nullptr;
  const cognition::AgentState* agent_state = nullptr;
  std::vector<const PerceptionRecord*> perception;  // any order; sorted by round on assembly
};

/// Sectioned text document pasted into assessment prompts. Section order is
/// fixed: memory summaries, behavior log, dialogue, traits, emotions. Disabled
/// channels produce no section at all, so T+B is a prefix of T+B+P, which is
/// a prefix of T+B+P+E.
struct AssessmentInput {
  ChannelBundle bundle;
  std::string memory;
  std::string behavior;
  std::string dialogue;
  std::string traits;    // empty unless P
  std::string emotions;  // empty unless E

  std::string document() const;
};

/// Throws BundleError for unsupported bundles or an empty encounter list, and
/// PreconditionError for an incomplete encounter unless allow_partial is set
/// (then only resolved rounds are used).
AssessmentInput assemble_channels(const std::vector<EncounterData>& encounters, const ChannelBundle& bundle,
                                  bool allow_partial = false);

}  // namespace arena::perception
