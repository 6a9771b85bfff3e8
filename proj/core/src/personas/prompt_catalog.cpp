#include "arena/personas/prompt_catalog.hpp"

#include "arena/errors.hpp"

namespace arena::personas {

namespace {

std::string read_data(const std::string& path) {
  try {
    return text::read_file(path);
  } catch (const IoError& e) {
    throw DataFileError(e.what());
  }
}

std::string strip_final_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

text::Template load_template(const std::string& dir, const char* name) {
  return text::Template(strip_final_newline(read_data(dir + "/" + name)));
}

std::vector<std::pair<std::string, text::Template>> parse_sections(const std::string& contents) {
  std::vector<std::pair<std::string, std::string>> raw;
  for (const auto& line : text::split_lines(strip_final_newline(contents))) {
    if (line.rfind("@section ", 0) == 0) {
      raw.emplace_back(text::trim(line.substr(9)), std::string{});
      continue;
    }
    if (raw.empty()) {
      if (!text::trim(line).empty()) throw DataFileError("role template: text before the first @section");
      continue;
    }
    auto& body = raw.back().second;
    if (!body.empty()) body += '\n';
    body += line;
  }
  std::vector<std::pair<std::string, text::Template>> sections;
  for (auto& [name, body] : raw) sections.emplace_back(name, text::Template(text::trim(body)));
  return sections;
}

}  // namespace

PromptCatalog PromptCatalog::load(const std::string& dir) {
  PromptCatalog c;
  c.version = text::trim(read_data(dir + "/VERSION"));
  if (c.version.empty()) throw DataFileError("prompt catalog VERSION is empty");
  c.role_sections = parse_sections(read_data(dir + "/role.txt"));
  c.agent_chat = load_template(dir, "agent_chat.txt");
  c.memory = load_template(dir, "memory.txt");
  c.reflection = load_template(dir, "reflection.txt");
  c.decide = load_template(dir, "decide.txt");
  c.emotion = load_template(dir, "emotion.txt");
  c.traits = load_template(dir, "traits.txt");
  c.direct_assess = load_template(dir, "direct_assess.txt");
  c.que_assess = load_template(dir, "que_assess.txt");
  c.sim_player = load_template(dir, "sim_player.txt");
  c.sim_player_decide = load_template(dir, "sim_player_decide.txt");
  return c;
}

}  // namespace arena::personas
