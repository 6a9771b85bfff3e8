#include "arena/platform/simulated_player.hpp"

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/structured.hpp"
#include "arena/text.hpp"

namespace arena::platform {

using gateway::Message;
using gateway::Role;

nlohmann::json to_json(const SimulatedPlayerSpec& s) {
  nlohmann::json j{{"persona_text", s.persona_text}, {"seed", s.seed}, {"target_high", s.target_high}};
  j["target_trait"] = s.target_trait ? nlohmann::json(std::string(1, trait_code(*s.target_trait))) : nlohmann::json(nullptr);
  return j;
}

SimulatedPlayerSpec sim_spec_from_json(const nlohmann::json& j) {
  SimulatedPlayerSpec s;
  s.persona_text = j.at("persona_text").get<std::string>();
  s.seed = j.value("seed", std::uint64_t{0});
  s.target_high = j.value("target_high", true);
  if (j.contains("target_trait") && j["target_trait"].is_string()) {
    const auto code = j["target_trait"].get<std::string>();
    if (code.size() != 1 || !trait_from_code(code[0])) throw InputError("bad simulated target trait '" + code + "'");
    s.target_trait = trait_from_code(code[0]);
  }
  return s;
}

SimulatedPlayerSpec extreme_persona(const personas::PersonaBank& bank, TraitId trait, bool high, std::uint64_t seed) {
  SimulatedPlayerSpec s;
  s.persona_text = bank.at(trait).personality_text;
  if (!high) {
    const auto pos = s.persona_text.find("extremely high in");
    if (pos != std::string::npos) s.persona_text.replace(pos, 17, "extremely low in");
  }
  s.seed = seed;
  s.target_trait = trait;
  s.target_high = high;
  return s;
}

PlayerTurn parse_sim_turn(const std::string& reply) {
  auto slots = structured::extract_slots(reply, {"Action", "Message"});
  const auto action = text::to_lower(structured::bare_token(slots["Action"]));
  if (action == "end") return EndAction{};
  if (action != "say") throw TemplateParseError("simulated player action must be say or end");
  std::string msg = slots["Message"];
  if (msg.empty() || msg == "-") throw TemplateParseError("simulated player chose to speak but gave no message");
  return SayAction{msg};
}

game::Decision parse_sim_decision(const std::string& reply) {
  auto slots = structured::extract_slots(reply, {"Thought", "Final Decision"});
  const auto d = game::parse_decision(structured::bare_token(slots["Final Decision"]));
  if (!d) throw DecisionParseError("simulated player decision must be cooperate or defect");
  return *d;
}

namespace {

std::string player_dialogue(const game::Round& round) {
  if (round.dialogue.empty()) return "(nothing said yet)";
  std::string out;
  for (const auto& u : round.dialogue) {
    if (!out.empty()) out += '\n';
    out += (u.speaker == game::Speaker::Player ? "You: " : "Opponent: ") + u.text;
  }
  return out;
}

}  // namespace

SimulatedPlayer::SimulatedPlayer(SimulatedPlayerSpec spec, std::shared_ptr<const personas::PromptCatalog> prompts,
                                 std::string rules, SimPlayerSettings settings)
    : spec_(std::move(spec)), prompts_(std::move(prompts)), rules_(std::move(rules)), settings_(std::move(settings)) {
  if (!prompts_) throw InputError("simulated player needs a prompt catalog");
}

gateway::ChatRequest SimulatedPlayer::make_request(std::string prompt) const {
  gateway::ChatRequest req;
  req.model_id = settings_.model_id;
  req.temperature = settings_.temperature;
  req.purpose = gateway::Purpose::SimulatedPlayer;
  req.messages = {Message{Role::System, std::move(prompt)},
                  Message{Role::User, "Provide your response according to the template."}};
  return req;
}

PlayerTurn SimulatedPlayer::next_turn(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& round) const {
  if (round.player_utterance_count() >= settings_.max_messages) return EndAction{};
  const std::string prompt = prompts_->sim_player.render(
      {{"persona", spec_.persona_text}, {"rules", rules_}, {"dialogue", player_dialogue(round)}});
  return gateway::complete_parsed(gw, make_request(prompt), log, parse_sim_turn, settings_.retry);
}

game::Decision SimulatedPlayer::decide(gateway::Gateway& gw, gateway::RecordLog& log, const game::Encounter& encounter,
                                       const game::Round& round) const {
  std::string history;
  for (const auto& r : encounter.rounds) {
    if (r.phase != game::Phase::Resolved) continue;
    if (!history.empty()) history += '\n';
    history += "Earlier round: you chose " + std::string(game::decision_name(*r.player_decision)) +
               ", your opponent chose " + std::string(game::decision_name(*r.agent_decision)) + ".";
  }
  if (history.empty()) history = "(this is your first round against this opponent)";
  const std::string prompt = prompts_->sim_player_decide.render({{"persona", spec_.persona_text},
                                                                {"rules", rules_},
                                                                {"history", history},
                                                                {"dialogue", player_dialogue(round)}});
  return gateway::complete_parsed(gw, make_request(prompt), log, parse_sim_decision, settings_.retry);
}

}  // namespace arena::platform
