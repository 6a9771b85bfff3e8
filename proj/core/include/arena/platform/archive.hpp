#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/assessment/assessor.hpp"
#include "arena/cognition/agent_state.hpp"
#include "arena/game/session.hpp"
#include "arena/gateway/chat.hpp"
#include "arena/perception/channels.hpp"

namespace arena::platform {

inline constexpr int kArchiveFormatVersion = 1;

/// Everything recorded about one session. On disk it is line-delimited JSON:
/// a header line, then typed lines ("session", "agent_state", "perception",
/// "chat_record", "assessment"). Files are only ever appended to; on load a
/// later "session" line replaces an earlier one and a later assessment with
/// the same cell key replaces the earlier result.
struct SessionArchive {
  nlohmann::json header = nlohmann::json::object();
  std::optional<game::GameSession> session;
  std::vector<cognition::AgentState> agents;
  std::vector<perception::PerceptionRecord> perception;
  gateway::RecordLog records;
  std::vector<assessment::AssessmentResult> assessments;

  std::vector<std::string> assessment_keys() const;
  assessment::SessionEvidence evidence() const;
};

std::string serialize_archive(const SessionArchive& a);
SessionArchive parse_archive(const std::string& contents);

void write_archive(const std::string& path, const SessionArchive& a);
SessionArchive load_archive(const std::string& path);

/// Appends assessment results and the chat records that produced them.
void append_assessments(const std::string& path, const gateway::RecordLog& records,
                        const std::vector<assessment::AssessmentResult>& results);

/// Rewrites <dir>/index.json listing every *.jsonl archive in the directory.
void write_index(const std::string& dir);

}  // namespace arena::platform
