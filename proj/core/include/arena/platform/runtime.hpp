#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/platform/archive.hpp"
#include "arena/platform/resources.hpp"
#include "arena/platform/simulated_player.hpp"

namespace arena::platform {

struct Event {
  std::uint64_t seq = 0;
  std::string type;  // "player_message" | "agent_message" | "phase" | "closed" | "error"
  nlohmann::json data;
};

/// One live session: the game state machine, the five agents' cognitive
/// state, perception running in the background and every model exchange.
///
/// Public methods lock a per-session mutex, so concurrent callers are
/// serialized. Perception for a resolved round runs on its own thread with
/// private copies of the round; results are merged in round order when the
/// session closes (or on finalize()).
class SessionRuntime {
public:
  SessionRuntime(std::shared_ptr<const Resources> resources, std::shared_ptr<gateway::Gateway> gateway,
                 std::shared_ptr<Clock> clock, game::GameSession session,
                 std::optional<SimulatedPlayerSpec> simulated = std::nullopt);
  ~SessionRuntime();

  SessionRuntime(const SessionRuntime&) = delete;
  SessionRuntime& operator=(const SessionRuntime&) = delete;

  void player_message(const std::string& text);
  void end_dialogue();
  void player_decision(game::Decision d);
  void set_consent(bool consent);
  void close_incomplete();

  game::PlayerView view() const;
  std::vector<Event> events_since(std::uint64_t after_seq) const;

  /// Waits for outstanding perception and merges it.
  void finalize();

  /// Runs the requested assessment cells that are not stored yet. Requires a
  /// closed session and consent.
  std::vector<assessment::MatrixCell> assess(const std::vector<assessment::Method>& methods,
                                             const std::vector<assessment::Condition>& conditions,
                                             const std::vector<perception::ChannelBundle>& bundles,
                                             std::optional<std::uint64_t> shuffle_seed = std::nullopt);

  SessionArchive archive() const;
  game::GameSession session() const;
  std::string session_id() const;
  Millis last_activity_ms() const;
  bool closed() const;

  /// Drives the whole session with a simulated player.
  void run_simulation(const SimulatedPlayer& player);

private:
  struct PerceptionTask {
    std::size_t encounter_pos;
    int round_index;
    std::future<std::pair<perception::PerceptionRecord, gateway::RecordLog>> result;
  };

  void message_unlocked(const std::string& text);
  void end_dialogue_unlocked();
  void decision_unlocked(game::Decision d);
  void emit(std::string type, nlohmann::json data);
  void emit_phase();
  void after_resolution(std::size_t enc, const game::Round& resolved);
  void ensure_agent_decision(std::size_t enc);
  void join_perception();
  std::size_t open_encounter() const;
  std::string game_history(std::size_t enc, int up_to_round) const;

  mutable std::mutex mu_;
  std::shared_ptr<const Resources> resources_;
  std::shared_ptr<gateway::Gateway> gateway_;
  std::shared_ptr<Clock> clock_;
  game::GameSession session_;
  std::optional<SimulatedPlayerSpec> simulated_;
  std::vector<cognition::Agent> agents_;
  std::vector<cognition::AgentState> states_;
  perception::Perceiver perceiver_;
  std::vector<PerceptionTask> pending_;
  std::vector<perception::PerceptionRecord> perception_;
  std::vector<std::string> perception_errors_;
  gateway::RecordLog records_;
  std::map<std::string, assessment::AssessmentResult> assessments_;
  std::vector<std::string> assessment_order_;
  std::vector<Event> events_;
  std::uint64_t next_seq_ = 1;
};

}  // namespace arena::platform
