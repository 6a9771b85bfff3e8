#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "arena/assessment/item_bank.hpp"
#include "arena/assessment/responses.hpp"
#include "arena/cognition/responses.hpp"
#include "arena/gateway/chat.hpp"
#include "arena/metrics/stats.hpp"
#include "arena/personas/prompt_catalog.hpp"

using namespace arena;

namespace {

const std::string kData = std::string(ARENA_SOURCE_DIR) + "/data";

gateway::ChatRequest sample_request(std::size_t chars) {
  gateway::ChatRequest r;
  r.model_id = "gpt-4o";
  r.temperature = 0.7;
  r.messages = {{gateway::Role::System, std::string(chars, 'x')}, {gateway::Role::User, "Shall we cooperate?"}};
  return r;
}

void BM_RequestHash(benchmark::State& state) {
  const auto req = sample_request(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gateway::request_hash(req));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RequestHash)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_RenderDirectAssessPrompt(benchmark::State& state) {
  const auto catalog = personas::PromptCatalog::load(kData + "/prompts");
  const std::string body(static_cast<std::size_t>(state.range(0)), 'y');
  const std::map<std::string, std::string> slots{{"rules", body},         {"chat_memory", body}, {"game_memory", body},
                                                 {"dialogue", body},      {"knowledge", body},
                                                 {"fine_grained_traits", body}};
  for (auto _ : state) benchmark::DoNotOptimize(catalog.direct_assess.render(slots));
}
BENCHMARK(BM_RenderDirectAssessPrompt)->Arg(256)->Arg(8192);

void BM_ParseDecision(benchmark::State& state) {
  const auto text = cognition::render_decision({"weighing trust against risk", game::Decision::Defect, "test them"});
  for (auto _ : state) benchmark::DoNotOptimize(cognition::parse_decision_reply(text));
}
BENCHMARK(BM_ParseDecision);

void BM_ParseDirectReply(benchmark::State& state) {
  assessment::DirectReply r;
  r.thought_process = "the player was consistently warm";
  r.ratings = {4, 3, 5, 4, 2};
  r.reasons = {"curious", "steady", "talkative", "kind", "calm"};
  const auto text = assessment::render_direct(r);
  for (auto _ : state) benchmark::DoNotOptimize(assessment::parse_direct_reply(text));
}
BENCHMARK(BM_ParseDirectReply);

void BM_ScoreItems(benchmark::State& state) {
  const auto bank = assessment::ItemBank::load(kData + "/bfi44_placeholder.tsv");
  std::map<int, int> raw;
  std::mt19937 rng(1);
  for (const auto& it : bank.items()) raw[it.number] = 1 + static_cast<int>(rng() % 5);
  for (auto _ : state) benchmark::DoNotOptimize(assessment::score_items(bank, raw));
}
BENCHMARK(BM_ScoreItems);

void BM_Rmse(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(1, 5);
  std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = u(rng), b[i] = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::rmse(a, b));
}
BENCHMARK(BM_Rmse)->Arg(42)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
