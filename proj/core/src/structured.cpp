#include "arena/structured.hpp"

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::structured {

namespace {

std::string_view strip_leading_noise(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == '#' || line[i] == '-' || line[i] == '*' || line[i] == ' ' || line[i] == '\t')) ++i;
  return line.substr(i);
}

/// Returns the value part when `line` is a label line for `label`.
std::optional<std::string> match_label(std::string_view line, const std::string& label) {
  std::string_view s = strip_leading_noise(line);
  if (!text::starts_with_ci(s, label)) return std::nullopt;
  s.remove_prefix(label.size());
  while (!s.empty() && (s.front() == '*' || s.front() == ' ')) s.remove_prefix(1);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  while (!s.empty() && (s.front() == '*' || s.front() == ' ')) s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

std::map<std::string, std::string> extract_slots(std::string_view text, const std::vector<std::string>& labels) {
  std::map<std::string, std::string> slots;
  std::string* open = nullptr;
  bool open_has_text = false;
  for (const auto& line : text::split_lines(text)) {
    bool is_label = false;
    for (const auto& label : labels) {
      if (auto v = match_label(line, label)) {
        is_label = true;
        if (slots.count(label)) {
          open = nullptr;
          break;
        }
        open = &slots[label];
        *open = *v;
        open_has_text = !text::trim(*v).empty();
        break;
      }
    }
    if (is_label || !open) continue;
    if (open_has_text || !text::trim(line).empty()) {
      if (open_has_text) *open += '\n';
      *open += line;
      open_has_text = true;
    }
  }
  for (auto& [_, v] : slots) v = text::trim(v);
  return slots;
}

std::map<std::string, std::string> require_slots(std::string_view text, const std::vector<std::string>& labels,
                                                 std::string_view template_name) {
  auto slots = extract_slots(text, labels);
  std::vector<std::string> missing;
  for (const auto& l : labels) {
    const auto it = slots.find(l);
    if (it == slots.end() || it->second.empty()) missing.push_back(l);
  }
  if (!missing.empty()) {
    throw TemplateParseError(std::string(template_name) + " reply is missing: " + text::join(missing, ", "));
  }
  return slots;
}

std::string bare_token(std::string_view value) {
  std::string s = text::trim(value);
  auto strip = [](char c) {
    return c == '"' || c == '\'' || c == '*' || c == '`' || c == '<' || c == '>' || c == '[' || c == ']' ||
           c == '(' || c == ')' || c == '{' || c == '}' || c == '.' || c == ',' || c == '!' || c == ';' || c == ':' ||
           c == ' ';
  };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && strip(s[b])) ++b;
  while (e > b && strip(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace arena::structured
