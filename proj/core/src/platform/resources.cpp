#include "arena/platform/resources.hpp"

#include <cstdlib>

#include "arena/errors.hpp"
#include "arena/gateway/gateway.hpp"
#include "arena/platform/scripted.hpp"

namespace arena::platform {

std::shared_ptr<const Resources> Resources::load(const PlatformConfig& config) {
  auto r = std::make_shared<Resources>();
  r->config = config;
  r->paths = DataPaths::resolve(config.data_dir);
  r->prompts = std::make_shared<const personas::PromptCatalog>(personas::PromptCatalog::load(r->paths.prompts_dir()));
  r->personas = personas::PersonaBank::load(r->paths.personas());
  r->story = game::StoryText::load(r->paths.storyline(), r->paths.rules());
  r->items = std::make_shared<const assessment::ItemBank>(assessment::ItemBank::load(r->paths.item_bank()));
  r->knowledge = assessment::load_knowledge(r->paths.knowledge());
  return r;
}

cognition::Agent Resources::make_agent(TraitId trait) const {
  cognition::AgentSettings s;
  s.model_id = config.agent_model;
  s.temperature = config.agent_temperature;
  s.context_token_budget = config.context_token_budget;
  s.retry.max_reasks = config.reasks;
  return cognition::Agent(personas.at(trait), prompts, story.rules, s);
}

perception::Perceiver Resources::make_perceiver() const {
  perception::PerceptionSettings s;
  s.model_id = config.perception_model;
  s.retry.max_reasks = config.reasks;
  return perception::Perceiver(prompts, story.rules, s);
}

assessment::Assessor Resources::make_assessor(std::optional<std::uint64_t> shuffle_seed) const {
  assessment::AssessmentSettings s;
  s.model_id = config.assessor_model;
  s.retry.max_reasks = config.reasks;
  s.parallelism = config.assessment_parallelism;
  s.shuffle_seed = shuffle_seed;
  return assessment::Assessor(prompts, story.rules, knowledge, items, s);
}

std::shared_ptr<gateway::Backend> make_backend(const std::string& kind, const PlatformConfig& config,
                                               const std::string& fixture_path) {
  if (kind == "mock") return std::make_shared<gateway::MockBackend>(scripted_reply);
  if (kind == "replay") {
    if (fixture_path.empty()) throw InputError("the replay backend needs a fixture file");
    return std::make_shared<gateway::ReplayBackend>(gateway::load_fixture(fixture_path));
  }
  if (kind == "live") {
    gateway::LiveConfig live;
    live.base_url = config.base_url;
    if (const char* key = std::getenv(config.api_key_env.c_str())) live.api_key = key;
    return std::make_shared<gateway::LiveBackend>(live);
  }
  throw InputError("unknown backend '" + kind + "' (expected live, replay or mock)");
}

}  // namespace arena::platform
