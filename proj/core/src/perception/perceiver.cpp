#include "arena/perception/perceiver.hpp"

#include "arena/cognition/game_text.hpp"
#include "arena/errors.hpp"
#include "arena/perception/responses.hpp"

namespace arena::perception {

using gateway::Message;
using gateway::Role;

std::string game_abstract(const game::Encounter& encounter, std::size_t encounter_pos, int up_to_round) {
  std::string out = "The player is facing opponent " + std::to_string(encounter_pos + 1) +
                    " of 5, an agent with a high " + std::string(trait_name(encounter.agent_trait)) +
                    " personality.";
  std::string history;
  for (const auto& r : encounter.rounds) {
    if (r.index > up_to_round || !r.outcome) continue;
    history += " Round " + std::to_string(r.index) + ": the player chose " +
               std::string(game::decision_name(*r.player_decision)) + " and the agent chose " +
               std::string(game::decision_name(*r.agent_decision)) + ".";
  }
  return history.empty() ? out + " No rounds have been resolved yet." : out + history;
}

Perceiver::Perceiver(std::shared_ptr<const personas::PromptCatalog> prompts, std::string rules,
                     PerceptionSettings settings)
    : prompts_(std::move(prompts)), rules_(std::move(rules)), settings_(std::move(settings)) {
  if (!prompts_) throw InputError("perceiver needs a prompt catalog");
}

gateway::ChatRequest Perceiver::make_request(gateway::Purpose purpose, std::string prompt) const {
  gateway::ChatRequest req;
  req.model_id = settings_.model_id;
  req.temperature = settings_.temperature;
  req.purpose = purpose;
  req.messages = {Message{Role::System, std::move(prompt)},
                  Message{Role::User, "Provide your response according to the template."}};
  return req;
}

EmotionAnnotation Perceiver::label_emotion(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& round,
                                           std::size_t utterance_pos, std::size_t encounter_pos,
                                           const std::string& abstract) const {
  if (utterance_pos >= round.dialogue.size() || round.dialogue[utterance_pos].speaker != game::Speaker::Player) {
    throw PreconditionError("emotion labels apply to player utterances only");
  }
  const std::string& sentence = round.dialogue[utterance_pos].text;
  const std::string prompt = prompts_->emotion.render({{"rules", rules_},
                                                       {"game_abstract", abstract},
                                                       {"dialogue", cognition::format_dialogue_neutral(round)},
                                                       {"sentence", sentence}});
  const auto reply = gateway::complete_parsed(gw, make_request(gateway::Purpose::Emotion, prompt), log,
                                              parse_emotion_reply, settings_.retry);
  return EmotionAnnotation{utterance_ref(encounter_pos, round.index, utterance_pos), utterance_pos, sentence,
                           reply.label, reply.analysis};
}

TraitObservation Perceiver::extract_traits(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& round,
                                           const std::string& abstract) const {
  if (round.phase != game::Phase::Resolved) throw PreconditionError("trait extraction needs a resolved round");
  const std::string prompt =
      prompts_->traits.render({{"rules", rules_},
                               {"game_abstract", abstract},
                               {"dialogue", cognition::format_dialogue_neutral(round)},
                               {"decision", std::string(game::decision_name(*round.player_decision))}});
  const auto reply = gateway::complete_parsed(gw, make_request(gateway::Purpose::Traits, prompt), log,
                                              parse_traits_reply, settings_.retry);
  return TraitObservation{round.index, reply.observed_behavior, reply.inferred_traits, reply.reason};
}

PerceptionRecord Perceiver::perceive_round(gateway::Gateway& gw, gateway::RecordLog& log,
                                           const game::Encounter& encounter, std::size_t encounter_pos,
                                           int round_index) const {
  if (round_index < 1 || round_index > static_cast<int>(encounter.rounds.size())) {
    throw InputError("round index out of range");
  }
  const auto& round = encounter.rounds[static_cast<std::size_t>(round_index - 1)];
  const std::string abstract = game_abstract(encounter, encounter_pos, round_index - 1);
  PerceptionRecord rec;
  rec.encounter_pos = encounter_pos;
  rec.round_index = round_index;
  for (std::size_t i = 0; i < round.dialogue.size(); ++i) {
    if (round.dialogue[i].speaker != game::Speaker::Player) continue;
    rec.emotions.push_back(label_emotion(gw, log, round, i, encounter_pos, abstract));
  }
  rec.traits = extract_traits(gw, log, round, abstract);
  return rec;
}

}  // namespace arena::perception
