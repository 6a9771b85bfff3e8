#pragma once

#include <map>
#include <string>

#include "arena/traits.hpp"

namespace arena::personas {

struct PersonaSpec {
  TraitId trait = TraitId::Openness;
  std::string personality_text;
  std::string label;  // for logs, e.g. "Extraversion agent"

  friend bool operator==(const PersonaSpec&, const PersonaSpec&) = default;
};

/// The five single-trait personas, loaded from a versioned key/value file:
///
///   @version 1.0.0
///   E = You are a character who is extremely high in ...
///
/// Immutable after load.
class PersonaBank {
public:
  static PersonaBank parse(const std::string& contents);
  static PersonaBank load(const std::string& path);

  const std::string& version() const noexcept { return version_; }
  const PersonaSpec& at(TraitId trait) const;
  std::size_t size() const noexcept { return personas_.size(); }
  const std::map<TraitId, PersonaSpec>& all() const noexcept { return personas_; }

  /// Canonical file form; parse(serialize()) reproduces the bank.
  std::string serialize() const;

  friend bool operator==(const PersonaBank&, const PersonaBank&) = default;

private:
  std::string version_;
  std::map<TraitId, PersonaSpec> personas_;
};

/// Bank shipped in the data directory. Throws DataFileError if missing or corrupt.
PersonaBank default_persona_bank(const std::string& data_root = {});

}  // namespace arena::personas
