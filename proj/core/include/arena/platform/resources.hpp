#pragma once

#include <memory>
#include <string>

#include "arena/assessment/assessor.hpp"
#include "arena/cognition/agent.hpp"
#include "arena/data_paths.hpp"
#include "arena/game/player_view.hpp"
#include "arena/perception/perceiver.hpp"
#include "arena/personas/persona_bank.hpp"
#include "arena/personas/prompt_catalog.hpp"
#include "arena/platform/config.hpp"

namespace arena::platform {

/// Immutable data shared by every session: prompts, personas, story text,
/// questionnaire and knowledge, plus the agents and assessors built from them.
struct Resources {
  DataPaths paths;
  std::shared_ptr<const personas::PromptCatalog> prompts;
  personas::PersonaBank personas;
  game::StoryText story;
  std::shared_ptr<const assessment::ItemBank> items;
  std::string knowledge;
  PlatformConfig config;

  static std::shared_ptr<const Resources> load(const PlatformConfig& config);

  cognition::Agent make_agent(TraitId trait) const;
  perception::Perceiver make_perceiver() const;
  assessment::Assessor make_assessor(std::optional<std::uint64_t> shuffle_seed = std::nullopt) const;
};

/// "live", "replay" or "mock". Replay needs a fixture path; live reads the API
/// key from the configured environment variable.
std::shared_ptr<gateway::Backend> make_backend(const std::string& kind, const PlatformConfig& config,
                                               const std::string& fixture_path = {});

}  // namespace arena::platform
