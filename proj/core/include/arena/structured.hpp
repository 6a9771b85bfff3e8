#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arena::structured {

/// Locates labelled slots in a template-shaped LLM reply. A label line is a
/// line whose text, after leading markdown noise (#, -, *, spaces), begins
/// with the label followed by ':' (optionally wrapped in ** bold markers).
/// A slot's value is the rest of that line plus every following line up to
/// the next label line, trimmed. The first occurrence of each label wins.
std::map<std::string, std::string> extract_slots(std::string_view text, const std::vector<std::string>& labels);

/// extract_slots() that throws TemplateParseError naming every missing or
/// empty label.
std::map<std::string, std::string> require_slots(std::string_view text, const std::vector<std::string>& labels,
                                                 std::string_view template_name);

/// Strips surrounding quotes, brackets, markdown emphasis and trailing
/// punctuation from a one-word slot value ("**Defect.**" -> "Defect").
std::string bare_token(std::string_view value);

}  // namespace arena::structured
