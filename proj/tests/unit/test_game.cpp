#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/game/player_view.hpp"
#include "arena/game/session.hpp"
#include "test_support.hpp"

using namespace arena;
using namespace arena::game;

namespace {

constexpr std::array<TraitId, 5> kOrder = {TraitId::Extraversion, TraitId::Openness, TraitId::Neuroticism,
                                           TraitId::Agreeableness, TraitId::Conscientiousness};

GameSession make_session(int rounds = 2, bool consent = true, std::optional<int> max_exchanges = std::nullopt) {
  SessionConfig cfg;
  cfg.rounds_per_encounter = rounds;
  cfg.max_exchanges = max_exchanges;
  return GameSession("s1", "p1", kOrder, consent, cfg, 1000);
}

void play_round(GameSession& s, std::size_t enc, Decision player, Decision agent, Millis t) {
  s.append_player_utterance(enc, "hi", t);
  s.append_agent_utterance(enc, "hello", t);
  s.end_dialogue(enc, t);
  s.commit_agent_decision(enc, agent, t);
  s.submit_player_decision(enc, player, t);
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("payoff matrix covers all four decision pairs") {
    CHECK(resolve_round(Decision::Cooperate, Decision::Cooperate) == Outcome{2, 2});
    CHECK(resolve_round(Decision::Cooperate, Decision::Defect) == Outcome{0, 3});
    CHECK(resolve_round(Decision::Defect, Decision::Cooperate) == Outcome{3, 0});
    CHECK(resolve_round(Decision::Defect, Decision::Defect) == Outcome{0, 0});
  }

  TEST_CASE("swapping roles mirrors the payoff") {
    for (auto a : {Decision::Cooperate, Decision::Defect}) {
      for (auto b : {Decision::Cooperate, Decision::Defect}) {
        const auto x = resolve_round(a, b);
        const auto y = resolve_round(b, a);
        CHECK(x.player_points == y.agent_points);
        CHECK(x.agent_points == y.player_points);
      }
    }
  }

  TEST_CASE("negative payoffs are rejected") {
    PayoffMatrix m;
    m.dd_each = -1;
    CHECK_THROWS_AS(m.validate(), InputError);
  }

  TEST_CASE("decision parsing") {
    CHECK(parse_decision("Cooperate") == Decision::Cooperate);
    CHECK(parse_decision("defect") == Decision::Defect);
    CHECK_FALSE(parse_decision("maybe").has_value());
  }

  TEST_CASE("agent order must be a permutation") {
    std::array<TraitId, 5> bad = kOrder;
    bad[1] = bad[0];
    CHECK_FALSE(is_trait_permutation(bad));
    CHECK_THROWS_AS(GameSession("s", "p", bad, true, SessionConfig{}, 0), InputError);
  }

  TEST_CASE("decision during dialogue is a phase error and leaves state untouched") {
    auto s = make_session();
    const auto before = s.to_json();
    CHECK_THROWS_AS(s.submit_player_decision(0, Decision::Cooperate, 5), PhaseError);
    CHECK_THROWS_AS(s.commit_agent_decision(0, Decision::Cooperate, 5), PhaseError);
    CHECK(s.to_json() == before);
  }

  TEST_CASE("chat after the dialogue ended is a phase error") {
    auto s = make_session();
    s.append_player_utterance(0, "hi", 2);
    s.end_dialogue(0, 3);
    CHECK_THROWS_AS(s.append_player_utterance(0, "more", 4), PhaseError);
    CHECK_THROWS_AS(s.end_dialogue(0, 4), PhaseError);
  }

  TEST_CASE("double decisions are rejected") {
    auto s = make_session();
    s.end_dialogue(0, 2);
    s.commit_agent_decision(0, Decision::Defect, 3);
    CHECK_THROWS_AS(s.commit_agent_decision(0, Decision::Cooperate, 3), DoubleDecision);
    s = make_session();
    s.end_dialogue(0, 2);
    const auto pending = s.submit_player_decision(0, Decision::Defect, 3);
    CHECK(pending.phase == Phase::DecisionPending);
    CHECK_THROWS_AS(s.submit_player_decision(0, Decision::Cooperate, 3), DoubleDecision);
    const auto resolved = s.commit_agent_decision(0, Decision::Cooperate, 4);
    CHECK(resolved.phase == Phase::Resolved);
    CHECK(resolved.outcome == Outcome{3, 0});
  }

  TEST_CASE("only the encounter in play accepts actions") {
    auto s = make_session();
    CHECK_THROWS_AS(s.append_player_utterance(1, "hi", 2), PhaseError);
    CHECK_THROWS_AS(s.append_player_utterance(9, "hi", 2), Error);
  }

  TEST_CASE("exchange cap") {
    auto s = make_session(2, true, 1);
    s.append_player_utterance(0, "one", 2);
    s.append_agent_utterance(0, "reply", 2);
    CHECK_THROWS_AS(s.append_player_utterance(0, "two", 3), PhaseError);
  }

  TEST_CASE("a full session advances through all five encounters") {
    auto s = make_session(2);
    Millis t = 10;
    for (std::size_t enc = 0; enc < 5; ++enc) {
      REQUIRE(s.current_encounter() == enc);
      play_round(s, enc, Decision::Cooperate, Decision::Defect, t++);
      play_round(s, enc, Decision::Defect, Decision::Defect, t++);
      CHECK(s.encounters()[enc].complete());
      CHECK(s.encounters()[enc].cumulative() == Outcome{0, 3});
    }
    CHECK(s.status() == SessionStatus::Complete);
    CHECK_FALSE(s.current_encounter().has_value());
    CHECK_THROWS_AS(s.append_player_utterance(4, "late", t), SessionClosed);
    CHECK(s.encounter_for(TraitId::Neuroticism).agent_trait == TraitId::Neuroticism);
  }

  TEST_CASE("abandoned sessions close as incomplete") {
    auto s = make_session();
    play_round(s, 0, Decision::Cooperate, Decision::Cooperate, 5);
    s.close_incomplete(99);
    CHECK(s.status() == SessionStatus::Incomplete);
    CHECK(s.closed_ms() == 99);
    CHECK_THROWS_AS(s.end_dialogue(0, 100), SessionClosed);
  }

  TEST_CASE("json round trip preserves the session") {
    auto s = make_session(2);
    play_round(s, 0, Decision::Cooperate, Decision::Defect, 5);
    s.append_player_utterance(0, "again", 6);
    s.set_emotion(0, 0, 0, EmotionLabel::Happy);
    const auto j = s.to_json();
    const auto back = GameSession::from_json(j);
    CHECK(back.to_json() == j);
  }

  TEST_CASE("corrupt snapshots are rejected") {
    auto s = make_session(2);
    play_round(s, 0, Decision::Cooperate, Decision::Defect, 5);
    auto j = s.to_json();
    j["encounters"][0]["rounds"][0]["outcome"][0] = 7;
    CHECK_THROWS_AS(GameSession::from_json(j), DataFileError);
  }

  TEST_CASE("consent gate") {
    auto s = make_session(2, false);
    CHECK_THROWS_AS(s.require_consent(), ConsentError);
    s.set_consent(true);
    CHECK_NOTHROW(s.require_consent());
  }

  TEST_CASE("player view hides points and round counters") {
    const auto story = StoryText::load(testing::data_dir() + "/storyline.txt", testing::data_dir() + "/rules.txt");
    auto s = make_session(3);
    play_round(s, 0, Decision::Cooperate, Decision::Defect, 5);
    s.append_player_utterance(0, "hello", 6);
    const auto view = player_view(s, story);
    CHECK(view.phase == "dialogue");
    CHECK(view.actions == std::vector<std::string>{"send", "end"});
    const std::string dumped = view.to_json().dump();
    for (const char* banned : {"\"score", "\"points", "\"round", "\"total", "\"payoff", "\"outcome"}) {
      CHECK(dumped.find(banned) == std::string::npos);
    }
    s.end_dialogue(0, 7);
    CHECK(player_view(s, story).actions == std::vector<std::string>{"cooperate", "defect"});
  }

  TEST_CASE("story text is the bundled storyline and rules") {
    const auto story = StoryText::load(testing::data_dir() + "/storyline.txt", testing::data_dir() + "/rules.txt");
    CHECK(story.rules.find("you will each earn 2 points") != std::string::npos);
    CHECK_FALSE(story.storyline.empty());
    CHECK_THROWS_AS(StoryText::load("/nonexistent/a", "/nonexistent/b"), DataFileError);
  }
}
