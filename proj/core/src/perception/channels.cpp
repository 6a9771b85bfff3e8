#include "arena/perception/channels.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::perception {

using nlohmann::json;

std::string utterance_ref(std::size_t encounter_pos, int round_index, std::size_t utterance_pos) {
  return "e" + std::to_string(encounter_pos + 1) + "-r" + std::to_string(round_index) + "-u" +
         std::to_string(utterance_pos + 1);
}

json to_json(const PerceptionRecord& r) {
  json emotions = json::array();
  for (const auto& e : r.emotions) {
    emotions.push_back({{"ref", e.utterance_ref},
                        {"utterance_pos", e.utterance_pos},
                        {"sentence", e.sentence},
                        {"label", emotion_name(e.label)},
                        {"analysis", e.analysis_text}});
  }
  return json{{"encounter_pos", r.encounter_pos},
              {"round", r.round_index},
              {"emotions", std::move(emotions)},
              {"traits",
               {{"round", r.traits.round_index},
                {"observed_behavior", r.traits.observed_behavior},
                {"inferred_traits", r.traits.inferred_traits},
                {"reason", r.traits.reason}}}};
}

PerceptionRecord perception_record_from_json(const json& j) {
  try {
    PerceptionRecord r;
    r.encounter_pos = j.at("encounter_pos").get<std::size_t>();
    r.round_index = j.at("round").get<int>();
    for (const auto& e : j.at("emotions")) {
      const auto label = parse_emotion(e.at("label").get<std::string>());
      if (!label) throw DataFileError("perception record has an unknown emotion label");
      r.emotions.push_back(EmotionAnnotation{e.at("ref").get<std::string>(), e.at("utterance_pos").get<std::size_t>(),
                                             e.at("sentence").get<std::string>(), *label,
                                             e.at("analysis").get<std::string>()});
    }
    const auto& t = j.at("traits");
    r.traits.round_index = t.at("round").get<int>();
    r.traits.observed_behavior = t.at("observed_behavior").get<std::string>();
    r.traits.inferred_traits = t.at("inferred_traits").get<std::vector<std::string>>();
    r.traits.reason = t.at("reason").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw DataFileError(std::string("malformed perception record: ") + e.what());
  }
}

void ChannelBundle::validate() const {
  const bool ok = include_text && include_behavior && (include_traits || !include_emotion);
  if (!ok) throw BundleError("unsupported channel bundle " + label() + "; use T+B, T+B+P or T+B+P+E");
}

std::string ChannelBundle::token() const {
  std::string t;
  if (include_text) t += 't';
  if (include_behavior) t += 'b';
  if (include_traits) t += 'p';
  if (include_emotion) t += 'e';
  return t;
}

std::string ChannelBundle::label() const {
  std::vector<std::string> parts;
  if (include_text) parts.emplace_back("T");
  if (include_behavior) parts.emplace_back("B");
  if (include_traits) parts.emplace_back("P");
  if (include_emotion) parts.emplace_back("E");
  return parts.empty() ? "(empty)" : text::join(parts, "+");
}

ChannelBundle ChannelBundle::parse(std::string_view token) {
  std::string t = text::to_lower(text::trim(token));
  t.erase(std::remove(t.begin(), t.end(), '+'), t.end());
  ChannelBundle b{false, false, false, false};
  for (char c : t) {
    bool* flag = c == 't' ? &b.include_text : c == 'b' ? &b.include_behavior : c == 'p' ? &b.include_traits
               : c == 'e' ? &b.include_emotion : nullptr;
    if (!flag || *flag) throw BundleError("bad bundle token '" + std::string(token) + "'");
    *flag = true;
  }
  b.validate();
  return b;
}

namespace {

std::string agent_heading(const EncounterData& d) {
  return "### Agent " + std::to_string(d.position + 1) + " (" + std::string(trait_name(d.encounter->agent_trait)) + ")";
}

bool usable(const game::Round& r) { return r.phase == game::Phase::Resolved; }

}  // namespace

std::string AssessmentInput::document() const {
  std::string doc = "## Memory Summaries\n" + memory + "\n\n## Behavior Log\n" + behavior + "\n\n## Dialogue\n" + dialogue;
  if (bundle.include_traits) doc += "\n\n## Fine-grained Personality Traits\n" + traits;
  if (bundle.include_emotion) doc += "\n\n## Emotion Labels\n" + emotions;
  return doc;
}

AssessmentInput assemble_channels(const std::vector<EncounterData>& encounters, const ChannelBundle& bundle,
                                  bool allow_partial) {
  bundle.validate();
  if (encounters.empty()) throw BundleError("no encounters to assemble");
  for (const auto& d : encounters) {
    if (!d.encounter || !d.agent_state) throw InputError("encounter data is incomplete");
    if (!allow_partial && !d.encounter->complete()) {
      throw PreconditionError("encounter with the " + std::string(trait_name(d.encounter->agent_trait)) +
                              " agent is not complete");
    }
  }

  AssessmentInput in;
  in.bundle = bundle;
  std::vector<std::string> memory, behavior, dialogue, traits, emotions;
  for (const auto& d : encounters) {
    const std::string heading = agent_heading(d);

    std::string mem = heading;
    for (const auto& m : d.agent_state->memories) mem += "\nRound " + std::to_string(m.round_index) + ":\n" + m.summary_text;
    if (d.agent_state->memories.empty()) mem += "\n(no summaries)";
    memory.push_back(mem);

    std::string beh = heading;
    std::string dlg = heading;
    for (const auto& r : d.encounter->rounds) {
      if (!usable(r)) continue;
      beh += "\nRound " + std::to_string(r.index) + ": player " + std::string(game::decision_name(*r.player_decision)) +
             ", agent " + std::string(game::decision_name(*r.agent_decision)) + "; points player " +
             std::to_string(r.outcome->player_points) + ", agent " + std::to_string(r.outcome->agent_points);
      dlg += "\nRound " + std::to_string(r.index) + ":";
      if (r.dialogue.empty()) dlg += "\n(no dialogue)";
      for (const auto& u : r.dialogue) {
        dlg += std::string("\n") + (u.speaker == game::Speaker::Player ? "Player: " : "Agent: ") + u.text;
      }
    }
    behavior.push_back(beh);
    dialogue.push_back(dlg);

    std::vector<const PerceptionRecord*> records = d.perception;
    std::sort(records.begin(), records.end(),
              [](const PerceptionRecord* a, const PerceptionRecord* b) { return a->round_index < b->round_index; });
    if (bundle.include_traits) {
      std::string tr = heading;
      for (const auto* p : records) {
        tr += "\nRound " + std::to_string(p->round_index) + ": Observed Behavior: " + p->traits.observed_behavior +
              "; Inferred Personality Traits: " + text::join(p->traits.inferred_traits, ", ") +
              "; Reason: " + p->traits.reason;
      }
      if (records.empty()) tr += "\n(no observations)";
      traits.push_back(tr);
    }
    if (bundle.include_emotion) {
      std::string em = heading;
      for (const auto* p : records) {
        for (const auto& e : p->emotions) {
          em += "\nRound " + std::to_string(p->round_index) + ", Player: \"" + e.sentence + "\" -> " +
                std::string(emotion_name(e.label));
        }
      }
      emotions.push_back(em);
    }
  }
  in.memory = text::join(memory, "\n\n");
  in.behavior = text::join(behavior, "\n\n");
  in.dialogue = text::join(dialogue, "\n\n");
  in.traits = text::join(traits, "\n\n");
  in.emotions = text::join(emotions, "\n\n");
  return in;
}

}  // namespace arena::perception
