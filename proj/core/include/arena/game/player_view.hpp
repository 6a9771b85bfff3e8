#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/game/session.hpp"

namespace arena::game {

struct StoryText {
  std::string storyline;
  std::string rules;

  /// Reads both UTF-8 files; throws DataFileError when missing or empty.
  static StoryText load(const std::string& storyline_path, const std::string& rules_path);
};

struct ReportRow {
  std::string trait;
  double rating = 0.0;
  std::string reason;
};

/// Post-game report shown to a consenting player.
struct PlayerReport {
  std::string method;
  std::vector<ReportRow> rows;
};

/// What the player's client is allowed to see. Carries no points, no round
/// index and no round count while the session is in play.
struct PlayerView {
  std::string status;  // "active" | "complete" | "incomplete"
  std::string phase;   // "dialogue" | "decision" | "waiting" | "finished"
  std::string storyline;
  std::string rules;
  std::vector<std::pair<std::string, std::string>> dialogue;  // (speaker, text)
  std::vector<std::string> actions;
  bool consent = false;
  std::optional<PlayerReport> report;

  nlohmann::json to_json() const;
};

/// `report` is attached only for a closed, consenting session.
PlayerView player_view(const GameSession& session, const StoryText& story,
                       const std::optional<PlayerReport>& report = std::nullopt);

}  // namespace arena::game
