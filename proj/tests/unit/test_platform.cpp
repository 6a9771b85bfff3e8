#include <doctest.h>

#include <filesystem>
#include <functional>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/platform/archive.hpp"
#include "arena/platform/config.hpp"
#include "arena/platform/service.hpp"
#include "arena/text.hpp"
#include "test_support.hpp"

using namespace arena;
using namespace arena::platform;
using nlohmann::json;

namespace {

struct Api {
  std::shared_ptr<ManualClock> clock = std::make_shared<ManualClock>(1000);
  ApiService api{testing::resources(2), std::make_shared<gateway::Gateway>(testing::scripted_backend(), clock), clock, 3};

  ApiResponse call(const std::string& method, const std::string& target, const json& body = json::object()) {
    return api.handle(method, target, body.empty() ? "" : body.dump());
  }
  std::string create(bool consent = true) {
    const auto r = call("POST", "/sessions", {{"player_id", "p1"}, {"consent", consent}});
    REQUIRE(r.status == 201);
    return r.body["session_id"].get<std::string>();
  }
  /// Plays every round with one message per round. Returns the final view.
  json play(const std::string& id, const std::function<std::string(int)>& decision) {
    const std::string base = "/sessions/" + id;
    json view = call("GET", base + "/view").body;
    int round = 0;
    while (view["status"] == "active") {
      if (view["phase"] == "dialogue") {
        REQUIRE(call("POST", base + "/messages", {{"text", "hi there"}}).status == 200);
        view = call("POST", base + "/end_dialogue").body;
      } else if (view["phase"] == "decision") {
        const auto r = call("POST", base + "/decision", {{"decision", decision(round++)}});
        REQUIRE(r.status == 200);
        view = r.body;
      } else {
        FAIL("unexpected phase " << view["phase"]);
      }
    }
    return view;
  }
};

void collect_keys(const json& j, std::set<std::string>& keys) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      keys.insert(it.key());
      collect_keys(it.value(), keys);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_keys(v, keys);
  }
}

}  // namespace

TEST_SUITE("platform") {
  TEST_CASE("config defaults, round trip and unknown keys") {
    const auto d = PlatformConfig::from_json(json::object());
    CHECK(d.rounds_per_encounter == 6);
    CHECK(d.agent_model == "gpt-4o");
    CHECK(d.api_key_env == "ARENA_API_KEY");
    auto c = d;
    c.rounds_per_encounter = 4;
    c.max_exchanges = 5;
    c.limits.max_concurrent = 7;
    const auto back = PlatformConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK_THROWS_AS(PlatformConfig::from_json({{"rounds_per_encountr", 3}}), InputError);
    CHECK_THROWS_AS(PlatformConfig::from_json({{"rounds_per_encounter", "six"}}), InputError);
  }

  TEST_CASE("error codes map to HTTP statuses") {
    CHECK(status_for_error("not_found") == 404);
    CHECK(status_for_error("input_error") == 400);
    CHECK(status_for_error("bundle_error") == 400);
    CHECK(status_for_error("phase_error") == 409);
    CHECK(status_for_error("double_decision") == 409);
    CHECK(status_for_error("session_closed") == 409);
    CHECK(status_for_error("consent_required") == 403);
    CHECK(status_for_error("transport_error") == 502);
    CHECK(status_for_error("item_failure") == 502);
  }

  TEST_CASE("full session over the API hides scores until the report") {
    Api a;
    const auto id = a.create();
    const std::string base = "/sessions/" + id;
    std::set<std::string> keys;
    collect_keys(a.call("GET", base + "/view").body, keys);
    const auto final_view = a.play(id, [](int r) { return r % 3 ? "cooperate" : "defect"; });
    collect_keys(final_view, keys);
    for (const char* banned : {"score", "scores", "points", "player_points", "agent_points", "round", "round_index",
                               "cumulative", "rounds_per_encounter"}) {
      CHECK_MESSAGE(keys.count(banned) == 0, banned);
    }
    CHECK(final_view["status"] == "complete");
    CHECK(final_view["phase"] == "finished");
    CHECK_FALSE(final_view.contains("report"));

    const auto assess = a.call("POST", base + "/assessment", {{"methods", {"DA"}}, {"conditions", {"ALL"}}, {"bundles", {"tbpe"}}});
    REQUIRE(assess.status == 200);
    CHECK(assess.body["results"].size() == 1);
    CHECK(assess.body["errors"].empty());
    const auto view = a.call("GET", base + "/view").body;
    REQUIRE(view.contains("report"));
    CHECK(view["report"]["traits"].size() == 5);
    CHECK(view["report"]["method"] == "DA");

    const auto again = a.call("POST", base + "/assessment", {{"methods", {"DA"}}, {"conditions", {"ALL"}}, {"bundles", {"tbpe"}}});
    CHECK(again.body["results"].empty());
    CHECK(a.call("GET", base + "/assessment").body["results"].size() == 1);
  }

  TEST_CASE("API error statuses") {
    Api a;
    CHECK(a.call("GET", "/sessions/nope/view").status == 404);
    CHECK(a.call("GET", "/unknown").status == 404);
    CHECK(a.call("DELETE", "/health").status == 405);
    CHECK(a.api.handle("POST", "/sessions", "{not json").status == 400);
    CHECK(a.call("POST", "/sessions", {{"consent", true}}).status == 400);
    CHECK(a.call("POST", "/sessions", {{"player_id", "p"}, {"agent_order", {"O", "O", "C", "E", "A"}}}).status == 400);

    const auto id = a.create(false);
    const std::string base = "/sessions/" + id;
    const auto early = a.call("POST", base + "/decision", {{"decision", "cooperate"}});
    CHECK(early.status == 409);
    CHECK(early.body["error"]["code"] == "phase_error");
    CHECK(a.call("POST", base + "/decision", {{"decision", "maybe"}}).status == 400);
    CHECK(a.call("POST", base + "/messages", {{"text", "   "}}).status == 400);
    CHECK(a.call("POST", base + "/assessment").status == 409);
    CHECK(a.call("GET", base + "/events?since=abc").status == 400);

    a.play(id, [](int) { return "cooperate"; });
    const auto no_consent = a.call("POST", base + "/assessment");
    CHECK(no_consent.status == 403);
    CHECK(no_consent.body["error"]["code"] == "consent_required");
    CHECK(a.call("POST", base + "/messages", {{"text", "late"}}).status == 409);
    CHECK(a.call("POST", base + "/consent", {{"consent", true}}).status == 200);
    CHECK(a.call("POST", base + "/assessment", {{"methods", {"DA"}}, {"conditions", {"O"}}, {"bundles", {"tb"}}}).status == 200);
    CHECK(a.call("POST", base + "/assessment", {{"bundles", {"te"}}}).status == 400);
  }

  TEST_CASE("events stream is ordered and resumable") {
    Api a;
    const auto id = a.create();
    const std::string base = "/sessions/" + id;
    a.call("POST", base + "/messages", {{"text", "hello"}});
    const auto all = a.call("GET", base + "/events").body;
    REQUIRE(all["events"].size() >= 2);
    std::uint64_t prev = 0;
    bool agent_spoke = false;
    for (const auto& e : all["events"]) {
      CHECK(e["seq"].get<std::uint64_t>() > prev);
      prev = e["seq"].get<std::uint64_t>();
      agent_spoke |= e["type"] == "agent_message";
    }
    CHECK(agent_spoke);
    const auto tail = a.call("GET", base + "/events?since=" + std::to_string(prev)).body;
    CHECK(tail["events"].empty());
    CHECK(tail["next"] == prev);
  }

  TEST_CASE("idle sessions expire as incomplete") {
    Api a;
    const auto id = a.create();
    a.call("POST", "/sessions/" + id + "/messages", {{"text", "hello"}});
    a.clock->advance(testing::small_config().session_ttl_ms + 1);
    const auto view = a.call("GET", "/sessions/" + id + "/view").body;
    CHECK(view["status"] == "incomplete");
    CHECK(a.call("POST", "/sessions/" + id + "/messages", {{"text", "back"}}).status == 409);
    CHECK(a.api.store().size() == 1);
  }

  TEST_CASE("closed sessions are archived and reload identically") {
    Api a;
    const auto dir = std::filesystem::temp_directory_path() / "arena_platform_archive_test";
    std::filesystem::remove_all(dir);
    a.api.set_archive_dir(dir.string());
    const auto id = a.create();
    a.play(id, [](int) { return "defect"; });
    const auto path = (dir / (id + ".jsonl")).string();
    REQUIRE(std::filesystem::exists(path));
    CHECK(std::filesystem::exists(dir / "index.json"));
    const auto loaded = load_archive(path);
    REQUIRE(loaded.session);
    CHECK(loaded.session->status() == game::SessionStatus::Complete);
    CHECK(loaded.agents.size() == 5);
    CHECK_FALSE(loaded.records.empty());
    CHECK(serialize_archive(parse_archive(serialize_archive(loaded))) == serialize_archive(loaded));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("later assessment lines replace earlier ones with the same key") {
    auto res = testing::resources(2);
    auto gw = testing::gateway_for(testing::scripted_backend());
    AssessPlan plan{{assessment::Method::DA}, {assessment::Condition::All}, {perception::ChannelBundle::text_behavior()}};
    auto archive = simulate_player(res, gw, std::make_shared<FrozenClock>(0), 4, 1, plan);
    REQUIRE(archive.assessments.size() == 1);
    const auto path = (std::filesystem::temp_directory_path() / "arena_dedupe_test.jsonl").string();
    write_archive(path, archive);
    auto changed = archive.assessments[0];
    changed.scores.values[0] = 1.0;
    append_assessments(path, {}, {changed});
    const auto loaded = load_archive(path);
    REQUIRE(loaded.assessments.size() == 1);
    CHECK(loaded.assessments[0].scores.values[0] == 1.0);
    CHECK(loaded.assessment_keys() == std::vector<std::string>{changed.cell_key()});
    std::filesystem::remove(path);

    auto bad = json::parse(text::split_lines(serialize_archive(archive))[0]);
    bad["format_version"] = 99;
    CHECK_THROWS_AS(parse_archive(bad.dump() + "\n"), DataFileError);
  }

  TEST_CASE("simulated identities are deterministic") {
    const auto bank = personas::default_persona_bank(testing::data_dir());
    const auto a = simulated_identity(bank, 7, 0);
    const auto b = simulated_identity(bank, 7, 0);
    CHECK(a.session_id == "sim-7-001");
    CHECK(a.agent_order == b.agent_order);
    CHECK(a.spec.persona_text == b.spec.persona_text);
    CHECK(game::is_trait_permutation(a.agent_order));
  }

  TEST_CASE("HTTP transport serves the API") {
    Api a;
    HttpServer server(a.api);
    const int port = server.bind("127.0.0.1", 0);
    std::thread t([&] { server.listen(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);
    const auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    const auto created = client.Post("/sessions", R"({"player_id":"web","consent":true})", "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    const auto id = json::parse(created->body)["session_id"].get<std::string>();
    const auto view = client.Get("/sessions/" + id + "/view");
    REQUIRE(view);
    CHECK(json::parse(view->body)["phase"] == "dialogue");
    const auto missing = client.Get("/sessions/none/events?since=0");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    server.stop();
    t.join();
  }
}
