#include "arena/game/session.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::game {

using nlohmann::json;

bool is_trait_permutation(const std::array<TraitId, 5>& order) {
  std::set<TraitId> seen(order.begin(), order.end());
  return seen.size() == 5;
}

GameSession::GameSession(std::string session_id, std::string player_id,
                         std::array<TraitId, 5> agent_order, bool consent,
                         const SessionConfig& config, Millis created_ms)
    : session_id_(std::move(session_id)),
      player_id_(std::move(player_id)),
      agent_order_(agent_order),
      consent_(consent),
      config_(config),
      created_ms_(created_ms),
      last_activity_ms_(created_ms) {
  if (session_id_.empty()) throw InputError("session id must not be empty");
  if (!is_trait_permutation(agent_order_)) throw InputError("agent order must be a permutation of O, C, E, A, N");
  if (config_.rounds_per_encounter < 1) throw InputError("rounds per encounter must be at least 1");
  if (config_.max_exchanges && *config_.max_exchanges < 0) throw InputError("max exchanges must be non-negative");
  config_.payoff.validate();
  for (auto trait : agent_order_) {
    Encounter e;
    e.agent_trait = trait;
    e.rounds_per_encounter = config_.rounds_per_encounter;
    encounters_.push_back(std::move(e));
  }
  encounters_.front().rounds.push_back(Round{});
}

std::optional<std::size_t> GameSession::current_encounter() const {
  if (status_ != SessionStatus::Active) return std::nullopt;
  for (std::size_t i = 0; i < encounters_.size(); ++i) {
    if (!encounters_[i].complete()) return i;
  }
  return std::nullopt;
}

const Round* GameSession::current_round() const {
  const auto idx = current_encounter();
  if (!idx) return nullptr;
  const auto& rounds = encounters_[*idx].rounds;
  return rounds.empty() ? nullptr : &rounds.back();
}

const Encounter& GameSession::encounter_for(TraitId trait) const {
  for (const auto& e : encounters_) {
    if (e.agent_trait == trait) return e;
  }
  throw NotFound("no encounter for trait " + std::string(trait_name(trait)));
}

void GameSession::require_consent() const {
  if (!consent_) throw ConsentError("player consent is required before assessment");
}

Round& GameSession::open_round_checked(std::size_t encounter_idx) {
  if (status_ != SessionStatus::Active) throw SessionClosed("session " + session_id_ + " is closed");
  const auto current = current_encounter();
  if (encounter_idx >= encounters_.size()) throw InputError("encounter index out of range");
  if (!current || *current != encounter_idx) {
    throw PhaseError("encounter " + std::to_string(encounter_idx) + " is not in play");
  }
  return encounters_[encounter_idx].rounds.back();
}

Round GameSession::append_player_utterance(std::size_t encounter_idx, std::string_view text_in, Millis now) {
  Round& round = open_round_checked(encounter_idx);
  if (round.phase != Phase::Dialogue) throw PhaseError("dialogue phase is over for this round");
  if (config_.max_exchanges && round.player_utterance_count() >= *config_.max_exchanges) {
    throw PhaseError("exchange limit reached for this round");
  }
  std::string text = text::trim(text_in);
  if (text.empty()) throw InputError("utterance text must not be empty");
  round.dialogue.push_back(Utterance{Speaker::Player, std::move(text), std::max(now, last_activity_ms_), std::nullopt});
  last_activity_ms_ = std::max(now, last_activity_ms_);
  return round;
}

Round GameSession::append_agent_utterance(std::size_t encounter_idx, std::string_view text_in, Millis now) {
  Round& round = open_round_checked(encounter_idx);
  if (round.phase != Phase::Dialogue) throw PhaseError("dialogue phase is over for this round");
  std::string text = text::trim(text_in);
  if (text.empty()) throw InputError("utterance text must not be empty");
  round.dialogue.push_back(Utterance{Speaker::Agent, std::move(text), std::max(now, last_activity_ms_), std::nullopt});
  last_activity_ms_ = std::max(now, last_activity_ms_);
  return round;
}

Round GameSession::end_dialogue(std::size_t encounter_idx, Millis now) {
  Round& round = open_round_checked(encounter_idx);
  if (round.phase != Phase::Dialogue) throw PhaseError("dialogue already ended for this round");
  round.phase = Phase::DecisionPending;
  last_activity_ms_ = std::max(now, last_activity_ms_);
  return round;
}

Round GameSession::commit_agent_decision(std::size_t encounter_idx, Decision d, Millis now) {
  Round& round = open_round_checked(encounter_idx);
  if (round.phase != Phase::DecisionPending) throw PhaseError("agent may only decide after the dialogue ends");
  if (round.agent_decision) throw DoubleDecision("agent decision already recorded");
  round.agent_decision = d;
  last_activity_ms_ = std::max(now, last_activity_ms_);
  if (!round.player_decision) return round;
  round.outcome = resolve_round(*round.player_decision, d, config_.payoff);
  round.phase = Phase::Resolved;
  Round snapshot = round;  // advancing may reallocate the round vector
  advance_after_resolution(encounter_idx, now);
  return snapshot;
}

Round GameSession::submit_player_decision(std::size_t encounter_idx, Decision d, Millis now) {
  Round& round = open_round_checked(encounter_idx);
  if (round.phase != Phase::DecisionPending) throw PhaseError("decisions are only accepted after the dialogue ends");
  if (round.player_decision) throw DoubleDecision("player decision already recorded");
  round.player_decision = d;
  last_activity_ms_ = std::max(now, last_activity_ms_);
  if (!round.agent_decision) return round;
  round.outcome = resolve_round(d, *round.agent_decision, config_.payoff);
  round.phase = Phase::Resolved;
  Round snapshot = round;
  advance_after_resolution(encounter_idx, now);
  return snapshot;
}

void GameSession::advance_after_resolution(std::size_t encounter_idx, Millis now) {
  auto& enc = encounters_[encounter_idx];
  if (static_cast<int>(enc.rounds.size()) < enc.rounds_per_encounter) {
    Round next;
    next.index = static_cast<int>(enc.rounds.size()) + 1;
    enc.rounds.push_back(std::move(next));
    return;
  }
  if (encounter_idx + 1 < encounters_.size()) {
    encounters_[encounter_idx + 1].rounds.push_back(Round{});
    return;
  }
  status_ = SessionStatus::Complete;
  closed_ms_ = now;
}

void GameSession::set_emotion(std::size_t encounter_idx, std::size_t round_pos, std::size_t utterance_pos,
                              EmotionLabel label) {
  if (encounter_idx >= encounters_.size()) throw InputError("encounter index out of range");
  auto& rounds = encounters_[encounter_idx].rounds;
  if (round_pos >= rounds.size()) throw InputError("round position out of range");
  auto& dialogue = rounds[round_pos].dialogue;
  if (utterance_pos >= dialogue.size()) throw InputError("utterance position out of range");
  if (dialogue[utterance_pos].speaker != Speaker::Player) throw InputError("only player utterances carry emotion labels");
  dialogue[utterance_pos].emotion = label;
}

void GameSession::close_incomplete(Millis now) {
  if (status_ != SessionStatus::Active) return;
  status_ = SessionStatus::Incomplete;
  closed_ms_ = now;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json round_to_json(const Round& r) {
  json dialogue = json::array();
  for (const auto& u : r.dialogue) {
    json ju{{"speaker", speaker_name(u.speaker)}, {"text", u.text}, {"timestamp_ms", u.timestamp_ms}};
    if (u.emotion) ju["emotion"] = emotion_name(*u.emotion);
    dialogue.push_back(std::move(ju));
  }
  json j{{"index", r.index}, {"phase", phase_name(r.phase)}, {"dialogue", std::move(dialogue)}};
  if (r.player_decision) j["player_decision"] = decision_name(*r.player_decision);
  if (r.agent_decision) j["agent_decision"] = decision_name(*r.agent_decision);
  if (r.outcome) j["outcome"] = {r.outcome->player_points, r.outcome->agent_points};
  return j;
}

Decision decision_from(const json& j) {
  const auto d = parse_decision(j.get<std::string>());
  if (!d) throw DataFileError("bad decision value " + j.dump());
  return *d;
}

Phase phase_from(const std::string& s) {
  for (auto p : {Phase::Dialogue, Phase::DecisionPending, Phase::Resolved}) {
    if (phase_name(p) == s) return p;
  }
  throw DataFileError("bad phase value " + s);
}

Round round_from_json(const json& j) {
  Round r;
  r.index = j.at("index").get<int>();
  r.phase = phase_from(j.at("phase").get<std::string>());
  for (const auto& ju : j.at("dialogue")) {
    Utterance u;
    const auto sp = ju.at("speaker").get<std::string>();
    if (sp == "player") u.speaker = Speaker::Player;
    else if (sp == "agent") u.speaker = Speaker::Agent;
    else throw DataFileError("bad speaker " + sp);
    u.text = ju.at("text").get<std::string>();
    u.timestamp_ms = ju.value("timestamp_ms", Millis{0});
    if (ju.contains("emotion")) {
      const auto e = parse_emotion(ju["emotion"].get<std::string>());
      if (!e) throw DataFileError("bad emotion label " + ju["emotion"].dump());
      u.emotion = e;
    }
    r.dialogue.push_back(std::move(u));
  }
  if (j.contains("player_decision")) r.player_decision = decision_from(j["player_decision"]);
  if (j.contains("agent_decision")) r.agent_decision = decision_from(j["agent_decision"]);
  if (j.contains("outcome")) r.outcome = Outcome{j["outcome"].at(0).get<int>(), j["outcome"].at(1).get<int>()};
  return r;
}

TraitId trait_from_json(const json& j) {
  const auto t = parse_trait(j.get<std::string>());
  if (!t) throw DataFileError("bad trait " + j.dump());
  return *t;
}

}  // namespace

json GameSession::to_json() const {
  json order = json::array();
  for (auto t : agent_order_) order.push_back(std::string(1, trait_code(t)));
  json encounters = json::array();
  for (const auto& e : encounters_) {
    json rounds = json::array();
    for (const auto& r : e.rounds) rounds.push_back(round_to_json(r));
    const auto total = e.cumulative();
    encounters.push_back({{"agent_trait", std::string(1, trait_code(e.agent_trait))},
                          {"rounds_per_encounter", e.rounds_per_encounter},
                          {"cumulative", {total.player_points, total.agent_points}},
                          {"rounds", std::move(rounds)}});
  }
  json cfg{{"rounds_per_encounter", config_.rounds_per_encounter},
           {"payoff",
            {config_.payoff.cc_each, config_.payoff.coop_when_betrayed, config_.payoff.defect_when_betraying,
             config_.payoff.dd_each}}};
  if (config_.max_exchanges) cfg["max_exchanges"] = *config_.max_exchanges;
  json j{{"session_id", session_id_},
         {"player_id", player_id_},
         {"agent_order", std::move(order)},
         {"consent", consent_},
         {"status", status_name(status_)},
         {"created_ms", created_ms_},
         {"last_activity_ms", last_activity_ms_},
         {"config", std::move(cfg)},
         {"encounters", std::move(encounters)}};
  if (closed_ms_) j["closed_ms"] = *closed_ms_;
  return j;
}

GameSession GameSession::from_json(const json& j) {
  try {
    std::array<TraitId, 5> order{};
    const auto& jo = j.at("agent_order");
    if (jo.size() != 5) throw DataFileError("agent_order must have five entries");
    for (std::size_t i = 0; i < 5; ++i) order[i] = trait_from_json(jo[i]);

    SessionConfig cfg;
    const auto& jc = j.at("config");
    cfg.rounds_per_encounter = jc.at("rounds_per_encounter").get<int>();
    if (jc.contains("max_exchanges")) cfg.max_exchanges = jc["max_exchanges"].get<int>();
    const auto& jp = jc.at("payoff");
    cfg.payoff = PayoffMatrix{jp.at(0).get<int>(), jp.at(1).get<int>(), jp.at(2).get<int>(), jp.at(3).get<int>()};

    GameSession s(j.at("session_id").get<std::string>(), j.at("player_id").get<std::string>(), order,
                  j.at("consent").get<bool>(), cfg, j.at("created_ms").get<Millis>());
    s.last_activity_ms_ = j.value("last_activity_ms", s.created_ms_);
    const auto status = j.at("status").get<std::string>();
    if (status == "active") s.status_ = SessionStatus::Active;
    else if (status == "complete") s.status_ = SessionStatus::Complete;
    else if (status == "incomplete") s.status_ = SessionStatus::Incomplete;
    else throw DataFileError("bad status " + status);
    if (j.contains("closed_ms")) s.closed_ms_ = j["closed_ms"].get<Millis>();

    const auto& je = j.at("encounters");
    if (je.size() != 5) throw DataFileError("session must have five encounters");
    for (std::size_t i = 0; i < 5; ++i) {
      auto& e = s.encounters_[i];
      if (trait_from_json(je[i].at("agent_trait")) != order[i]) {
        throw DataFileError("encounter order disagrees with agent_order");
      }
      e.rounds.clear();
      for (const auto& jr : je[i].at("rounds")) e.rounds.push_back(round_from_json(jr));
      if (je[i].contains("cumulative")) {
        const auto total = e.cumulative();
        if (je[i]["cumulative"].at(0).get<int>() != total.player_points ||
            je[i]["cumulative"].at(1).get<int>() != total.agent_points) {
          throw DataFileError("cumulative scores disagree with round outcomes");
        }
      }
    }
    s.check_invariants();
    return s;
  } catch (const json::exception& e) {
    throw DataFileError(std::string("malformed session document: ") + e.what());
  }
}

void GameSession::check_invariants() const {
  bool seen_open = false;
  for (std::size_t i = 0; i < encounters_.size(); ++i) {
    const auto& e = encounters_[i];
    if (static_cast<int>(e.rounds.size()) > e.rounds_per_encounter) throw DataFileError("too many rounds in encounter");
    for (std::size_t k = 0; k < e.rounds.size(); ++k) {
      const auto& r = e.rounds[k];
      if (r.index != static_cast<int>(k) + 1) throw DataFileError("round indices must be 1-based and contiguous");
      const bool both = r.player_decision && r.agent_decision;
      if (both != r.outcome.has_value() || both != (r.phase == Phase::Resolved)) {
        throw DataFileError("round outcome/decision/phase invariant violated");
      }
      if (r.outcome && *r.outcome != resolve_round(*r.player_decision, *r.agent_decision, config_.payoff)) {
        throw DataFileError("round outcome disagrees with the payoff matrix");
      }
      if (r.phase == Phase::Dialogue && (r.player_decision || r.agent_decision)) {
        throw DataFileError("decision recorded during dialogue");
      }
      if (r.phase != Phase::Resolved && k + 1 != e.rounds.size()) throw DataFileError("unresolved round before the last");
      for (const auto& u : r.dialogue) {
        if (text::trim(u.text).empty()) throw DataFileError("empty utterance");
        if (u.emotion && u.speaker != Speaker::Player) throw DataFileError("agent utterance carries an emotion label");
      }
    }
    if (!e.complete() && e.started()) {
      if (seen_open) throw DataFileError("more than one encounter in play");
      seen_open = true;
    }
    if (e.started() && i > 0 && !encounters_[i - 1].complete()) throw DataFileError("encounter started out of order");
  }
}

}  // namespace arena::game
