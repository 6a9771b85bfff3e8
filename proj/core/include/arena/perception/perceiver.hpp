#pragma once

#include <memory>
#include <string>

#include "arena/gateway/retry.hpp"
#include "arena/perception/channels.hpp"
#include "arena/personas/prompt_catalog.hpp"

namespace arena::perception {

struct PerceptionSettings {
  std::string model_id = "gpt-4o";
  double temperature = 0.0;
  gateway::RetryPolicy retry;
};

/// One-paragraph summary of the encounter so far, given to the emotion and
/// trait prompts as context.
std::string game_abstract(const game::Encounter& encounter, std::size_t encounter_pos, int up_to_round);

class Perceiver {
public:
  Perceiver(std::shared_ptr<const personas::PromptCatalog> prompts, std::string rules, PerceptionSettings settings);

  EmotionAnnotation label_emotion(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& round,
                                  std::size_t utterance_pos, std::size_t encounter_pos,
                                  const std::string& abstract) const;

  TraitObservation extract_traits(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& round,
                                  const std::string& abstract) const;

  /// Emotion for every player utterance plus the trait observation for one
  /// resolved round.
  PerceptionRecord perceive_round(gateway::Gateway& gw, gateway::RecordLog& log, const game::Encounter& encounter,
                                  std::size_t encounter_pos, int round_index) const;

private:
  gateway::ChatRequest make_request(gateway::Purpose purpose, std::string prompt) const;

  std::shared_ptr<const personas::PromptCatalog> prompts_;
  std::string rules_;
  PerceptionSettings settings_;
};

}  // namespace arena::perception
