#include "arena/personas/persona_bank.hpp"

#include "arena/data_paths.hpp"
#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::personas {

PersonaBank PersonaBank::parse(const std::string& contents) {
  PersonaBank bank;
  int line_no = 0;
  for (const auto& raw : text::split_lines(contents)) {
    ++line_no;
    const std::string line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("@version", 0) == 0) {
      bank.version_ = text::trim(line.substr(8));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataFileError("persona bank line " + std::to_string(line_no) + ": expected '<code> = <text>'");
    const auto trait = parse_trait(line.substr(0, eq));
    if (!trait) throw DataFileError("persona bank line " + std::to_string(line_no) + ": unknown trait code");
    std::string body = text::trim(line.substr(eq + 1));
    if (body.empty()) throw DataFileError("persona bank line " + std::to_string(line_no) + ": empty personality text");
    if (bank.personas_.count(*trait)) throw DataFileError("persona bank: duplicate entry for " + std::string(trait_name(*trait)));
    bank.personas_[*trait] = PersonaSpec{*trait, std::move(body), std::string(trait_name(*trait)) + " agent"};
  }
  if (bank.version_.empty()) throw DataFileError("persona bank: missing @version line");
  if (bank.personas_.size() != kAllTraits.size()) throw DataFileError("persona bank must define all five traits");
  return bank;
}

PersonaBank PersonaBank::load(const std::string& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const IoError& e) {
    throw DataFileError(e.what());
  }
  return parse(contents);
}

const PersonaSpec& PersonaBank::at(TraitId trait) const {
  const auto it = personas_.find(trait);
  if (it == personas_.end()) throw DataFileError("no persona for " + std::string(trait_name(trait)));
  return it->second;
}

std::string PersonaBank::serialize() const {
  std::string out = "@version " + version_ + "\n";
  for (auto t : kAllTraits) {
    const auto it = personas_.find(t);
    if (it != personas_.end()) out += std::string(1, trait_code(t)) + " = " + it->second.personality_text + "\n";
  }
  return out;
}

PersonaBank default_persona_bank(const std::string& data_root) {
  return PersonaBank::load(DataPaths::resolve(data_root).personas());
}

}  // namespace arena::personas
