#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/perception/perceiver.hpp"
#include "arena/perception/responses.hpp"
#include "test_support.hpp"

using namespace arena;
using namespace arena::perception;

namespace {

constexpr int kRoundTrips = 1000;

const platform::SessionArchive& simulated() {
  static const platform::SessionArchive archive = [] {
    auto res = testing::resources(2);
    auto gw = testing::gateway_for(testing::scripted_backend());
    return platform::simulate_player(res, gw, std::make_shared<FrozenClock>(0), 5, 1);
  }();
  return archive;
}

std::vector<std::string> random_trait_list(std::mt19937_64& rng) {
  static const char* kTraits[] = {"friendly", "anxious", "curious", "assertive", "trusting", "cautious",
                                  "impulsive", "organized", "warm", "moody", "open-minded", "reserved"};
  std::vector<std::string> out(1 + rng() % 4);
  for (auto& t : out) t = kTraits[rng() % std::size(kTraits)];
  return out;
}

}  // namespace

TEST_SUITE("perception") {
  TEST_CASE("emotion template round trips") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < kRoundTrips; ++i) {
      EmotionReply r{testing::random_words(rng), testing::random_words(rng), kAllEmotions[rng() % kAllEmotions.size()]};
      REQUIRE(parse_emotion_reply(render_emotion(r)) == r);
    }
  }

  TEST_CASE("trait template round trips") {
    std::mt19937_64 rng(505);
    for (int i = 0; i < kRoundTrips; ++i) {
      TraitsReply r{testing::random_words(rng), random_trait_list(rng), testing::random_words(rng)};
      REQUIRE(parse_traits_reply(render_traits(r)) == r);
    }
  }

  TEST_CASE("labels outside the six-label set are rejected") {
    CHECK_THROWS_AS(parse_emotion_reply("- Emotion Analysis Process: x\n- Sentence: y\n- Emotion Label: Joyful"),
                    LabelParseError);
    CHECK_THROWS_AS(parse_emotion_reply("- Sentence: y"), LabelParseError);
    CHECK(parse_emotion_reply("Emotion Label: **angry**").label == EmotionLabel::Angry);
    CHECK_THROWS_AS(parse_traits_reply("- Observed Behavior: a\n- Inferred Personality Traits: ,\n- Reason: r"),
                    TemplateParseError);
  }

  TEST_CASE("bundle tokens") {
    CHECK(ChannelBundle::parse("tb") == ChannelBundle::text_behavior());
    CHECK(ChannelBundle::parse("T+B+P") == ChannelBundle::text_behavior_traits());
    CHECK(ChannelBundle::parse("tbpe") == ChannelBundle::all());
    CHECK(ChannelBundle::all().label() == "T+B+P+E");
    for (const char* bad : {"", "t", "tbe", "tbb", "tbx", "pe"}) CHECK_THROWS_AS(ChannelBundle::parse(bad), BundleError);
  }

  TEST_CASE("perception records serialize") {
    const auto& a = simulated();
    REQUIRE_FALSE(a.perception.empty());
    for (const auto& p : a.perception) CHECK(perception_record_from_json(to_json(p)) == p);
  }

  TEST_CASE("every player utterance gets exactly one label") {
    const auto& a = simulated();
    const auto& s = *a.session;
    std::size_t player_utterances = 0;
    for (const auto& e : s.encounters())
      for (const auto& r : e.rounds)
        for (const auto& u : r.dialogue) player_utterances += u.speaker == game::Speaker::Player;
    std::size_t labels = 0;
    for (const auto& p : a.perception) {
      labels += p.emotions.size();
      for (const auto& e : p.emotions) {
        CHECK(e.utterance_ref == utterance_ref(p.encounter_pos, p.round_index, e.utterance_pos));
        const auto& u = s.encounters()[p.encounter_pos].rounds[static_cast<std::size_t>(p.round_index - 1)].dialogue[e.utterance_pos];
        CHECK(u.speaker == game::Speaker::Player);
        CHECK(u.emotion == e.label);
      }
    }
    CHECK(labels == player_utterances);
  }

  TEST_CASE("ablation bundles are nested and contained") {
    const auto& a = simulated();
    const auto ev = a.evidence();
    const auto data = ev.select(assessment::Condition::All);
    REQUIRE(data.size() == 5);
    const auto tb = assemble_channels(data, ChannelBundle::text_behavior());
    const auto tbp = assemble_channels(data, ChannelBundle::text_behavior_traits());
    const auto tbpe = assemble_channels(data, ChannelBundle::all());
    CHECK(tbp.document().rfind(tb.document(), 0) == 0);
    CHECK(tbpe.document().rfind(tbp.document(), 0) == 0);
    CHECK(tb.traits.empty());
    CHECK(tb.emotions.empty());
    CHECK(tbp.emotions.empty());
    CHECK_FALSE(tbp.traits.empty());
    CHECK_FALSE(tbpe.emotions.empty());
    for (const auto& p : a.perception) {
      CHECK(tb.document().find(p.traits.reason) == std::string::npos);
    }
    CHECK(tb.document().find("Emotion Labels") == std::string::npos);
    CHECK(tbp.document().find("Emotion Labels") == std::string::npos);
  }

  TEST_CASE("single-agent conditions see one encounter only") {
    const auto& a = simulated();
    const auto ev = a.evidence();
    const auto& order = a.session->agent_order();
    for (std::size_t pos = 0; pos < 5; ++pos) {
      const auto cond = static_cast<assessment::Condition>(static_cast<int>(order[pos]));
      const auto data = ev.select(cond);
      REQUIRE(data.size() == 1);
      CHECK(data[0].position == pos);
      const auto doc = assemble_channels(data, ChannelBundle::all()).document();
      for (std::size_t other = 0; other < 5; ++other) {
        const std::string heading = "### Agent " + std::to_string(other + 1) + " (";
        CHECK((doc.find(heading) != std::string::npos) == (other == pos));
      }
      for (const auto* p : data[0].perception) CHECK(p->encounter_pos == pos);
    }
  }

  TEST_CASE("incomplete encounters need allow_partial") {
    const auto& a = simulated();
    auto enc = a.session->encounters()[0];
    enc.rounds.pop_back();
    EncounterData d{0, &enc, &a.agents[0], {}};
    CHECK_THROWS_AS(assemble_channels({d}, ChannelBundle::text_behavior()), PreconditionError);
    CHECK_NOTHROW(assemble_channels({d}, ChannelBundle::text_behavior(), true));
    CHECK_THROWS_AS(assemble_channels({}, ChannelBundle::text_behavior()), BundleError);
  }

  TEST_CASE("perception calls are temperature zero and tagged") {
    const auto& a = simulated();
    std::size_t n = 0;
    for (const auto& r : a.records) {
      if (r.request.purpose == gateway::Purpose::Emotion || r.request.purpose == gateway::Purpose::Traits) {
        CHECK(r.request.temperature == 0.0);
        ++n;
      }
    }
    CHECK(n > 0);
  }
}
