#include "arena/platform/runtime.hpp"

#include <algorithm>

#include "arena/cognition/game_text.hpp"
#include "arena/errors.hpp"

namespace arena::platform {

SessionRuntime::SessionRuntime(std::shared_ptr<const Resources> resources, std::shared_ptr<gateway::Gateway> gateway,
                               std::shared_ptr<Clock> clock, game::GameSession session,
                               std::optional<SimulatedPlayerSpec> simulated)
    : resources_(std::move(resources)),
      gateway_(std::move(gateway)),
      clock_(std::move(clock)),
      session_(std::move(session)),
      simulated_(std::move(simulated)),
      perceiver_(resources_->make_perceiver()) {
  if (!gateway_ || !clock_) throw InputError("session runtime needs a gateway and a clock");
  for (auto trait : session_.agent_order()) {
    agents_.push_back(resources_->make_agent(trait));
    cognition::AgentState st;
    st.trait = trait;
    states_.push_back(std::move(st));
  }
  emit_phase();
}

SessionRuntime::~SessionRuntime() {
  for (auto& t : pending_) {
    if (t.result.valid()) t.result.wait();
  }
}

void SessionRuntime::emit(std::string type, nlohmann::json data) {
  events_.push_back(Event{next_seq_++, std::move(type), std::move(data)});
}

void SessionRuntime::emit_phase() {
  emit("phase", {{"phase", game::player_view(session_, resources_->story).phase}});
}

std::size_t SessionRuntime::open_encounter() const {
  const auto enc = session_.current_encounter();
  if (!enc) throw SessionClosed("session " + session_.session_id() + " is closed");
  return *enc;
}

std::string SessionRuntime::game_history(std::size_t enc, int up_to_round) const {
  return cognition::game_status_text(session_.encounters()[enc], up_to_round);
}

void SessionRuntime::message_unlocked(const std::string& text) {
  const std::size_t enc = open_encounter();
  session_.append_player_utterance(enc, text, clock_->now_ms());
  emit("player_message", {{"text", text}});
  const game::Round round = *session_.current_round();
  const std::string reply = agents_[enc].agent_chat_reply(*gateway_, records_, states_[enc], round);
  session_.append_agent_utterance(enc, reply, clock_->now_ms());
  emit("agent_message", {{"text", reply}});
}

void SessionRuntime::ensure_agent_decision(std::size_t enc) {
  const game::Round* round = session_.current_round();
  if (!round || round->phase != game::Phase::DecisionPending || round->agent_decision) return;
  const game::Round snapshot = *round;
  auto out = agents_[enc].decide_and_plan(*gateway_, records_, states_[enc], snapshot,
                                          game_history(enc, snapshot.index - 1));
  const game::Decision d = out.decision;
  states_[enc].plans.push_back(std::move(out));
  const game::Round after = session_.commit_agent_decision(enc, d, clock_->now_ms());
  if (after.phase == game::Phase::Resolved) after_resolution(enc, after);
}

void SessionRuntime::end_dialogue_unlocked() {
  const std::size_t enc = open_encounter();
  session_.end_dialogue(enc, clock_->now_ms());
  emit_phase();
  ensure_agent_decision(enc);
}

void SessionRuntime::decision_unlocked(game::Decision d) {
  const std::size_t enc = open_encounter();
  ensure_agent_decision(enc);
  const game::Round after = session_.submit_player_decision(enc, d, clock_->now_ms());
  if (after.phase == game::Phase::Resolved) after_resolution(enc, after);
}

void SessionRuntime::after_resolution(std::size_t enc, const game::Round& resolved) {
  const game::Encounter& encounter = session_.encounters()[enc];
  const std::string status = cognition::game_status_text(encounter, resolved.index);
  auto& state = states_[enc];
  state.memories.push_back(agents_[enc].summarize_round(*gateway_, records_, resolved, status));
  state.reflections.push_back(agents_[enc].reflect(*gateway_, records_, state, resolved, status));

  auto encounter_copy = std::make_shared<const game::Encounter>(encounter);
  const int round_index = resolved.index;
  pending_.push_back(PerceptionTask{
      enc, round_index,
      std::async(std::launch::async, [this, encounter_copy, enc, round_index] {
        gateway::RecordLog log;
        auto record = perceiver_.perceive_round(*gateway_, log, *encounter_copy, enc, round_index);
        return std::make_pair(std::move(record), std::move(log));
      })});

  if (session_.status() != game::SessionStatus::Active) {
    join_perception();
    emit("closed", {{"status", std::string(game::status_name(session_.status()))}});
  }
  emit_phase();
}

void SessionRuntime::join_perception() {
  for (auto& task : pending_) {
    try {
      auto [record, log] = task.result.get();
      records_.insert(records_.end(), std::make_move_iterator(log.begin()), std::make_move_iterator(log.end()));
      const auto& rounds = session_.encounters()[task.encounter_pos].rounds;
      const auto it = std::find_if(rounds.begin(), rounds.end(), [&](const auto& r) { return r.index == task.round_index; });
      if (it != rounds.end()) {
        const auto round_pos = static_cast<std::size_t>(it - rounds.begin());
        for (const auto& e : record.emotions) session_.set_emotion(task.encounter_pos, round_pos, e.utterance_pos, e.label);
      }
      perception_.push_back(std::move(record));
    } catch (const std::exception& e) {
      const std::string msg = "perception failed for encounter " + std::to_string(task.encounter_pos + 1) + " round " +
                              std::to_string(task.round_index) + ": " + e.what();
      perception_errors_.push_back(msg);
      emit("error", {{"message", msg}});
    }
  }
  pending_.clear();
}

void SessionRuntime::player_message(const std::string& text) {
  std::lock_guard lock(mu_);
  message_unlocked(text);
}

void SessionRuntime::end_dialogue() {
  std::lock_guard lock(mu_);
  end_dialogue_unlocked();
}

void SessionRuntime::player_decision(game::Decision d) {
  std::lock_guard lock(mu_);
  decision_unlocked(d);
}

void SessionRuntime::set_consent(bool consent) {
  std::lock_guard lock(mu_);
  session_.set_consent(consent);
}

void SessionRuntime::close_incomplete() {
  std::lock_guard lock(mu_);
  if (session_.status() != game::SessionStatus::Active) return;
  session_.close_incomplete(clock_->now_ms());
  join_perception();
  emit("closed", {{"status", std::string(game::status_name(session_.status()))}});
  emit_phase();
}

void SessionRuntime::finalize() {
  std::lock_guard lock(mu_);
  join_perception();
}

game::PlayerView SessionRuntime::view() const {
  std::lock_guard lock(mu_);
  std::optional<game::PlayerReport> report;
  if (session_.status() != game::SessionStatus::Active && session_.consent() && !assessment_order_.empty()) {
    const assessment::AssessmentResult* chosen = nullptr;
    for (const auto& key : assessment_order_) {
      const auto& r = assessments_.at(key);
      if (!chosen) chosen = &r;
      if (r.method == assessment::Method::DA && r.condition == assessment::Condition::All) {
        chosen = &r;
        break;
      }
    }
    game::PlayerReport rep;
    rep.method = std::string(assessment::method_name(chosen->method));
    for (auto t : kAllTraits) {
      const std::string& reason = chosen->scores.reasons[trait_index(t)];
      rep.rows.push_back({std::string(trait_name(t)), chosen->scores.at(t),
                          reason.empty() ? "Scored from the peer-rating questionnaire." : reason});
    }
    report = std::move(rep);
  }
  return game::player_view(session_, resources_->story, report);
}

std::vector<Event> SessionRuntime::events_since(std::uint64_t after_seq) const {
  std::lock_guard lock(mu_);
  std::vector<Event> out;
  for (const auto& e : events_) {
    if (e.seq > after_seq) out.push_back(e);
  }
  return out;
}

std::vector<assessment::MatrixCell> SessionRuntime::assess(const std::vector<assessment::Method>& methods,
                                                           const std::vector<assessment::Condition>& conditions,
                                                           const std::vector<perception::ChannelBundle>& bundles,
                                                           std::optional<std::uint64_t> shuffle_seed) {
  std::lock_guard lock(mu_);
  if (session_.status() == game::SessionStatus::Active) {
    throw PreconditionError("session " + session_.session_id() + " is still in play");
  }
  session_.require_consent();
  join_perception();
  const auto assessor = resources_->make_assessor(shuffle_seed);
  assessment::SessionEvidence ev{&session_, &states_, &perception_};
  auto cells = assessment::assess_matrix(assessor, *gateway_, ev, methods, conditions, bundles, assessment_order_);
  for (auto& cell : cells) {
    records_.insert(records_.end(), cell.records.begin(), cell.records.end());
    if (!cell.result) continue;
    const std::string key = cell.result->cell_key();
    if (!assessments_.count(key)) assessment_order_.push_back(key);
    assessments_[key] = *cell.result;
  }
  return cells;
}

SessionArchive SessionRuntime::archive() const {
  std::lock_guard lock(mu_);
  SessionArchive a;
  const auto& cfg = resources_->config;
  a.header = {{"type", "header"},
              {"format", "arena-archive"},
              {"format_version", kArchiveFormatVersion},
              {"session_id", session_.session_id()},
              {"player_id", session_.player_id()},
              {"prompt_version", resources_->prompts->version},
              {"persona_version", resources_->personas.version()},
              {"item_bank_version", resources_->items->version()},
              {"agent_model", cfg.agent_model},
              {"perception_model", cfg.perception_model},
              {"simulated", simulated_.has_value()}};
  if (simulated_) a.header["simulated_player"] = to_json(*simulated_);
  a.header["perception_errors"] = perception_errors_;
  a.session = session_;
  a.agents = states_;
  a.perception = perception_;
  a.records = records_;
  for (const auto& key : assessment_order_) a.assessments.push_back(assessments_.at(key));
  return a;
}

game::GameSession SessionRuntime::session() const {
  std::lock_guard lock(mu_);
  return session_;
}

std::string SessionRuntime::session_id() const { return session_.session_id(); }

Millis SessionRuntime::last_activity_ms() const {
  std::lock_guard lock(mu_);
  return session_.last_activity_ms();
}

bool SessionRuntime::closed() const {
  std::lock_guard lock(mu_);
  return session_.status() != game::SessionStatus::Active;
}

void SessionRuntime::run_simulation(const SimulatedPlayer& player) {
  std::lock_guard lock(mu_);
  while (session_.status() == game::SessionStatus::Active) {
    const std::size_t enc = open_encounter();
    const game::Round round = *session_.current_round();
    if (round.phase == game::Phase::Dialogue) {
      const auto turn = player.next_turn(*gateway_, records_, round);
      if (const auto* say = std::get_if<SayAction>(&turn)) {
        message_unlocked(say->text);
      } else {
        end_dialogue_unlocked();
      }
    } else {
      const auto d = player.decide(*gateway_, records_, session_.encounters()[enc], round);
      decision_unlocked(d);
    }
  }
}

}  // namespace arena::platform
