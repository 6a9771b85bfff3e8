#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/gateway/gateway.hpp"
#include "arena/gateway/retry.hpp"
#include "test_support.hpp"

using namespace arena;
using namespace arena::gateway;

namespace {

ChatRequest request(std::string model, double t, std::vector<Message> messages, Purpose p = Purpose::AgentChat) {
  ChatRequest r;
  r.model_id = std::move(model);
  r.temperature = t;
  r.messages = std::move(messages);
  r.purpose = p;
  return r;
}

/// Local stand-in for a chat-completions provider.
class FakeProvider {
public:
  std::function<void(const httplib::Request&, httplib::Response&)> behavior;
  std::atomic<int> hits{0};
  std::string last_auth;

  FakeProvider() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      last_auth = req.get_header_value("Authorization");
      behavior(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeProvider() {
    server_.stop();
    thread_.join();
  }
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

LiveConfig live_config(const FakeProvider& p) {
  LiveConfig c;
  c.base_url = p.base_url();
  c.api_key = "test-key";
  c.timeout = std::chrono::seconds(5);
  c.sleep = [](std::chrono::milliseconds) {};
  return c;
}

void ok_reply(httplib::Response& res, const std::string& content) {
  nlohmann::json j{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}},
                   {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 3}}}};
  res.set_content(j.dump(), "application/json");
}

}  // namespace

TEST_SUITE("gateway") {
  TEST_CASE("request hashes match independently computed SHA-256 values") {
    const auto a = request("gpt-4o", 0.0, {{Role::System, "You are a test."}, {Role::User, "Hello"}});
    CHECK(canonical_request(a) ==
          R"({"messages":[{"content":"You are a test.","role":"system"},{"content":"Hello","role":"user"}],"model_id":"gpt-4o","temperature":0.0})");
    CHECK(request_hash(a) == "cad6b6529d7b187091c012540681ba9c04cdd39bc497a9c7c20db8ebdf453a71");

    const auto b = request("gpt-4o-mini", 0.7,
                           {{Role::System, "Let’s think step by step."}, {Role::User, "Ready?"}, {Role::Assistant, "Yes."}});
    CHECK(request_hash(b) == "483f868a2ea3864ff5a2c837ca56eb0ad7dd20ef25887757817c75893486f33b");

    const auto c = request("m", 1.5, {{Role::User, "line1\nline2 \"quoted\" \\ back\ttab"}});
    CHECK(request_hash(c) == "4aa058020d4c0719398def3bde0d71d269e9dba3295da27c90a2df5d4dad933b");
  }

  TEST_CASE("purpose tags do not change the hash") {
    auto a = request("m", 0.0, {{Role::System, "s"}, {Role::User, "x"}}, Purpose::AgentChat);
    auto b = a;
    b.purpose = Purpose::Memory;
    CHECK(request_hash(a) == request_hash(b));
  }

  TEST_CASE("request validation") {
    CHECK_THROWS_AS(request("", 0.0, {{Role::System, "s"}, {Role::User, "x"}}).validate(), InputError);
    CHECK_THROWS_AS(request("m", 0.0, {}).validate(), InputError);
    CHECK_THROWS_AS(request("m", 3.0, {{Role::System, "s"}, {Role::User, "x"}}).validate(), InputError);
    CHECK_THROWS_AS(request("m", 0.2, {{Role::System, "s"}, {Role::User, "x"}}, Purpose::DirectAssess).validate(), TemperatureContractError);
    CHECK_THROWS_AS(request("m", 0.2, {{Role::System, "s"}, {Role::User, "x"}}, Purpose::QueAssess).validate(), TemperatureContractError);
    CHECK_NOTHROW(request("m", 0.0, {{Role::System, "s"}, {Role::User, "x"}}, Purpose::QueAssess).validate());
  }

  TEST_CASE("every call is recorded once with its hash") {
    auto gw = testing::gateway_for(std::make_shared<MockBackend>([](const ChatRequest&) { return "pong"; }));
    RecordLog log;
    const auto req = request("m", 0.5, {{Role::System, "s"}, {Role::User, "ping"}});
    CHECK(gw->complete(req, log) == "pong");
    REQUIRE(log.size() == 1);
    CHECK(log[0].hash == request_hash(req));
    CHECK(log[0].response_text == "pong");
    CHECK(log[0].backend == BackendKind::Mock);
    CHECK(record_from_json(to_json(log[0])) == log[0]);
  }

  TEST_CASE("tampered records fail hash verification") {
    auto gw = testing::gateway_for(std::make_shared<MockBackend>([](const ChatRequest&) { return "pong"; }));
    RecordLog log;
    gw->complete(request("m", 0.5, {{Role::System, "s"}, {Role::User, "ping"}}), log);
    auto j = to_json(log[0]);
    j["request"]["messages"][0]["content"] = "pang";
    CHECK_THROWS_AS(record_from_json(j), Error);
  }

  TEST_CASE("replay serves recorded replies in order and repeats the last") {
    const auto req = request("m", 0.0, {{Role::System, "s"}, {Role::User, "q"}});
    RecordLog recorded;
    for (const char* text : {"first", "second"}) {
      ChatRecord r;
      r.request = req;
      r.hash = request_hash(req);
      r.response_text = text;
      recorded.push_back(r);
    }
    auto gw = testing::gateway_for(std::make_shared<ReplayBackend>(recorded));
    RecordLog log;
    CHECK(gw->complete(req, log) == "first");
    CHECK(gw->complete(req, log) == "second");
    CHECK(gw->complete(req, log) == "second");
    CHECK(log.back().backend == BackendKind::Replay);
    CHECK_THROWS_AS(gw->complete(request("m", 0.0, {{Role::System, "s"}, {Role::User, "other"}}), log), ReplayMissError);
  }

  TEST_CASE("fixture files round trip") {
    auto gw = testing::gateway_for(std::make_shared<MockBackend>([](const ChatRequest& r) { return r.messages[1].content + "!"; }));
    RecordLog log;
    for (int i = 0; i < 5; ++i) gw->complete(request("m", 0.0, {{Role::System, "s"}, {Role::User, "q" + std::to_string(i)}}), log);
    const auto path = (std::filesystem::temp_directory_path() / "arena_fixture_test.jsonl").string();
    write_fixture(path, log);
    CHECK(load_fixture(path) == log);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_fixture("/nonexistent/fixture.jsonl"), IoError);
  }

  TEST_CASE("forced mock replies take precedence per purpose") {
    auto backend = std::make_shared<MockBackend>([](const ChatRequest&) { return "default"; });
    backend->push(Purpose::Memory, "forced");
    auto gw = testing::gateway_for(backend);
    RecordLog log;
    CHECK(gw->complete(request("m", 0.0, {{Role::System, "s"}, {Role::User, "a"}}, Purpose::AgentChat), log) == "default");
    CHECK(gw->complete(request("m", 0.0, {{Role::System, "s"}, {Role::User, "a"}}, Purpose::Memory), log) == "forced");
    CHECK(gw->complete(request("m", 0.0, {{Role::System, "s"}, {Role::User, "a"}}, Purpose::Memory), log) == "default");
    CHECK(backend->calls() == 3);
  }

  TEST_CASE("corrective re-asks stop after the policy limit") {
    auto backend = std::make_shared<MockBackend>([](const ChatRequest&) { return "garbage"; });
    auto gw = testing::gateway_for(backend);
    RecordLog log;
    auto parse = [](const std::string& s) -> int {
      if (s != "good") throw TemplateParseError("not good");
      return 1;
    };
    CHECK_THROWS_AS(complete_parsed(*gw, request("m", 0.0, {{Role::System, "s"}, {Role::User, "a"}}), log, parse, RetryPolicy{3}),
                    TemplateParseError);
    CHECK(log.size() == 4);
    CHECK(log.back().request.messages.size() == 2 + 2 * 3);
    CHECK(log.back().request.messages.back().content.find("not good") != std::string::npos);

    backend->push(Purpose::AgentChat, "bad");
    backend->push(Purpose::AgentChat, "good");
    RecordLog log2;
    CHECK(complete_parsed(*gw, request("m", 0.0, {{Role::System, "s"}, {Role::User, "a"}}), log2, parse) == 1);
    CHECK(log2.size() == 2);
  }

  TEST_CASE("concurrency never exceeds the configured limit") {
    std::atomic<int> in_flight{0}, peak{0};
    auto backend = std::make_shared<MockBackend>([&](const ChatRequest&) {
      const int now = ++in_flight;
      int p = peak.load();
      while (now > p && !peak.compare_exchange_weak(p, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
      --in_flight;
      return std::string("ok");
    });
    Gateway gw(backend, std::make_shared<FrozenClock>(0), GatewayLimits{2, 0});
    std::vector<std::thread> threads;
    for (int t = 0; t < 6; ++t) {
      threads.emplace_back([&] {
        RecordLog log;
        for (int i = 0; i < 5; ++i) gw.complete(request("m", 0.0, {{Role::System, "s"}, {Role::User, "x"}}), log);
      });
    }
    for (auto& t : threads) t.join();
    CHECK(peak.load() <= 2);
    CHECK(backend->calls() == 30);
  }

  TEST_CASE("live backend against a local provider") {
    FakeProvider provider;
    const auto req = request("gpt-test", 0.0, {{Role::System, "sys"}, {Role::User, "hello"}});

    SUBCASE("success parses content and usage") {
      provider.behavior = [](const httplib::Request& r, httplib::Response& res) {
        const auto body = nlohmann::json::parse(r.body);
        ok_reply(res, "echo:" + body["messages"][1]["content"].get<std::string>() + ":" + body["model"].get<std::string>());
      };
      LiveBackend live(live_config(provider));
      const auto reply = live.send(req);
      CHECK(reply.text == "echo:hello:gpt-test");
      CHECK(reply.usage.prompt_tokens == 11);
      CHECK(provider.last_auth == "Bearer test-key");
    }
    SUBCASE("401 is an auth error without retries") {
      provider.behavior = [](const httplib::Request&, httplib::Response& res) { res.status = 401; };
      LiveBackend live(live_config(provider));
      CHECK_THROWS_AS(live.send(req), AuthError);
      CHECK(provider.hits == 1);
    }
    SUBCASE("429 is retried then succeeds") {
      provider.behavior = [&](const httplib::Request&, httplib::Response& res) {
        if (provider.hits < 3) {
          res.status = 429;
        } else {
          ok_reply(res, "finally");
        }
      };
      std::vector<long> waits;
      auto cfg = live_config(provider);
      cfg.sleep = [&](std::chrono::milliseconds d) { waits.push_back(static_cast<long>(d.count())); };
      LiveBackend live(cfg);
      CHECK(live.send(req).text == "finally");
      CHECK(waits == std::vector<long>{500, 1000});
    }
    SUBCASE("persistent 429 becomes a rate limit error") {
      provider.behavior = [](const httplib::Request&, httplib::Response& res) { res.status = 429; };
      LiveBackend live(live_config(provider));
      CHECK_THROWS_AS(live.send(req), RateLimitError);
      CHECK(provider.hits == 3);
    }
    SUBCASE("persistent 5xx becomes a transport error") {
      provider.behavior = [](const httplib::Request&, httplib::Response& res) { res.status = 503; };
      LiveBackend live(live_config(provider));
      CHECK_THROWS_AS(live.send(req), TransportError);
    }
    SUBCASE("missing key fails before any request") {
      auto cfg = live_config(provider);
      cfg.api_key.clear();
      LiveBackend live(cfg);
      CHECK_THROWS_AS(live.send(req), AuthError);
      CHECK(provider.hits == 0);
    }
  }

  TEST_CASE("unreachable provider is a transport error") {
    LiveConfig cfg;
    cfg.base_url = "http://127.0.0.1:1/v1";
    cfg.api_key = "k";
    cfg.timeout = std::chrono::seconds(1);
    cfg.sleep = [](std::chrono::milliseconds) {};
    LiveBackend live(cfg);
    CHECK_THROWS_AS(live.send(request("m", 0.0, {{Role::System, "s"}, {Role::User, "x"}})), TransportError);
  }
}
