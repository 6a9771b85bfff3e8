#include "arena/personas/role_prompt.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::personas {

std::string numbered_rules(const std::string& rules_text) {
  std::vector<std::string> kept;
  for (const auto& line : text::split_lines(rules_text)) {
    const std::string t = text::trim(line);
    std::size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i > 0 && i < t.size() && t[i] == '.') kept.push_back(t);
  }
  return kept.empty() ? text::trim(rules_text) : text::join(kept, "\n");
}

std::string RolePrompt::render() const {
  std::string out;
  for (const auto& [name, body] : sections) {
    if (!out.empty()) out += "\n\n";
    out += "### " + name + ":\n" + body;
  }
  return out;
}

RolePrompt build_role_prompt(const PersonaSpec& persona, const std::string& rules_text,
                             const PromptCatalog& catalog) {
  if (text::trim(persona.personality_text).empty()) throw TemplateError("persona has empty personality text");
  if (text::trim(rules_text).empty()) throw TemplateError("rules text is empty");

  const std::size_t n_required = std::size(kRequiredSections);
  if (catalog.role_sections.size() != n_required) {
    throw TemplateError("role template must have exactly the sections Instruction, Personality, Objective, Tips");
  }
  for (std::size_t i = 0; i < n_required; ++i) {
    if (catalog.role_sections[i].first != kRequiredSections[i]) {
      throw TemplateError("role template section " + std::to_string(i + 1) + " must be " + kRequiredSections[i]);
    }
  }

  const std::map<std::string, std::string> values{
      {"rules", numbered_rules(rules_text)},
      {"personality", persona.personality_text},
      {"trait", std::string(trait_name(persona.trait))},
  };
  RolePrompt prompt;
  bool personality_used = false;
  for (const auto& [name, tpl] : catalog.role_sections) {
    const auto names = tpl.placeholders();
    if (std::find(names.begin(), names.end(), "personality") != names.end()) personality_used = true;
    prompt.sections.emplace_back(name, tpl.render(values));
  }
  if (!personality_used) throw TemplateError("role template never places {personality}");
  return prompt;
}

}  // namespace arena::personas
