#include "arena/game/player_view.hpp"

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::game {

StoryText StoryText::load(const std::string& storyline_path, const std::string& rules_path) {
  StoryText story;
  try {
    story.storyline = text::read_file(storyline_path);
    story.rules = text::read_file(rules_path);
  } catch (const IoError& e) {
    throw DataFileError(e.what());
  }
  // One trailing newline is file formatting, not content.
  for (auto* s : {&story.storyline, &story.rules}) {
    if (!s->empty() && s->back() == '\n') s->pop_back();
    if (text::trim(*s).empty()) throw DataFileError("storyline/rules file is empty");
  }
  return story;
}

nlohmann::json PlayerView::to_json() const {
  nlohmann::json dlg = nlohmann::json::array();
  for (const auto& [speaker, text] : dialogue) dlg.push_back({{"speaker", speaker}, {"text", text}});
  nlohmann::json j{{"status", status}, {"phase", phase},       {"storyline", storyline}, {"rules", rules},
                   {"dialogue", dlg},  {"actions", actions}, {"consent", consent}};
  if (report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report->rows) rows.push_back({{"trait", r.trait}, {"rating", r.rating}, {"reason", r.reason}});
    j["report"] = {{"method", report->method}, {"traits", rows}};
  }
  return j;
}

PlayerView player_view(const GameSession& session, const StoryText& story,
                       const std::optional<PlayerReport>& report) {
  PlayerView view;
  view.status = std::string(status_name(session.status()));
  view.storyline = story.storyline;
  view.rules = story.rules;
  view.consent = session.consent();

  const Round* round = session.current_round();
  if (!round) {
    view.phase = "finished";
    if (session.consent() && report) view.report = report;
    return view;
  }
  for (const auto& u : round->dialogue) {
    view.dialogue.emplace_back(u.speaker == Speaker::Player ? "you" : "opponent", u.text);
  }
  switch (round->phase) {
    case Phase::Dialogue:
      view.phase = "dialogue";
      view.actions = {"send", "end"};
      break;
    case Phase::DecisionPending:
      if (round->player_decision) {
        view.phase = "waiting";
      } else {
        view.phase = "decision";
        view.actions = {"cooperate", "defect"};
      }
      break;
    case Phase::Resolved:
      view.phase = "waiting";
      break;
  }
  return view;
}

}  // namespace arena::game
