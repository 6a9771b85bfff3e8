#include "arena/cognition/agent_state.hpp"

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"

namespace arena::cognition {

using nlohmann::json;

json to_json(const AgentState& s) {
  json memories = json::array();
  for (const auto& m : s.memories) {
    memories.push_back({{"round", m.round_index}, {"summary", m.summary_text}, {"game_status", m.game_status_snapshot}});
  }
  json reflections = json::array();
  for (const auto& r : s.reflections) {
    reflections.push_back({{"round", r.round_index},
                           {"insight", r.insight},
                           {"thoughts", r.thoughts},
                           {"action", r.action},
                           {"text", r.text}});
  }
  json plans = json::array();
  for (const auto& p : s.plans) {
    plans.push_back({{"decision", game::decision_name(p.decision)},
                     {"process", p.decision_process_text},
                     {"plan", p.long_term_plan}});
  }
  return json{{"trait", std::string(1, trait_code(s.trait))},
              {"memories", std::move(memories)},
              {"reflections", std::move(reflections)},
              {"plans", std::move(plans)}};
}

AgentState agent_state_from_json(const json& j) {
  try {
    AgentState s;
    const auto t = parse_trait(j.at("trait").get<std::string>());
    if (!t) throw DataFileError("agent state has an unknown trait");
    s.trait = *t;
    for (const auto& m : j.at("memories")) {
      s.memories.push_back(MemoryEntry{m.at("round").get<int>(), m.at("summary").get<std::string>(),
                                       m.at("game_status").get<std::string>()});
    }
    for (const auto& r : j.at("reflections")) {
      s.reflections.push_back(Reflection{r.at("round").get<int>(), r.at("insight").get<std::string>(),
                                         r.at("thoughts").get<std::string>(), r.at("action").get<std::string>(),
                                         r.at("text").get<std::string>()});
    }
    for (const auto& p : j.at("plans")) {
      const auto d = game::parse_decision(p.at("decision").get<std::string>());
      if (!d) throw DataFileError("agent plan has a bad decision");
      s.plans.push_back(AgentTurnOutput{*d, p.at("process").get<std::string>(), p.at("plan").get<std::string>()});
    }
    return s;
  } catch (const json::exception& e) {
    throw DataFileError(std::string("malformed agent state: ") + e.what());
  }
}

}  // namespace arena::cognition
