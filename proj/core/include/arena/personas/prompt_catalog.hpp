#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arena/text.hpp"

namespace arena::personas {

/// Every prompt template the engine sends, loaded from one versioned directory.
/// The version string is stamped into sessions and assessment results.
struct PromptCatalog {
  std::string version;
  /// Role-playing prompt as (section name, template) pairs in file order.
  std::vector<std::pair<std::string, text::Template>> role_sections;
  text::Template agent_chat;
  text::Template memory;
  text::Template reflection;
  text::Template decide;
  text::Template emotion;
  text::Template traits;
  text::Template direct_assess;
  text::Template que_assess;
  text::Template sim_player;
  text::Template sim_player_decide;

  /// Throws DataFileError for a missing file or TemplateError for bad syntax.
  static PromptCatalog load(const std::string& prompts_dir);
};

}  // namespace arena::personas
