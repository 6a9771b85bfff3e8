#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arena/personas/persona_bank.hpp"
#include "arena/personas/prompt_catalog.hpp"

namespace arena::personas {

inline constexpr const char* kRequiredSections[] = {"Instruction", "Personality", "Objective", "Tips"};

struct RolePrompt {
  std::vector<std::pair<std::string, std::string>> sections;

  /// "### <name>:" headers, blank line between sections.
  std::string render() const;
};

/// The numbered lines of the rules text ("1. ..."), or the whole text when
/// it has none.
std::string numbered_rules(const std::string& rules_text);

/// Rules enter the prompt as numbered_rules(). Pure function of (persona, rules, catalog). Substitutes {rules},
/// {personality} and {trait}; any other placeholder is a TemplateError.
RolePrompt build_role_prompt(const PersonaSpec& persona, const std::string& rules_text,
                             const PromptCatalog& catalog);

}  // namespace arena::personas
