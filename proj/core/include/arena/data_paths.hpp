#pragma once

#include <string>

namespace arena {

/// Locations of the bundled data files (prompts, persona bank, item bank,
/// storyline). Resolution order: explicit root, $ARENA_DATA_DIR, build default.
struct DataPaths {
  std::string root;

  static DataPaths resolve(const std::string& explicit_root = {});

  std::string prompts_dir() const { return root + "/prompts"; }
  std::string personas() const { return root + "/personas.txt"; }
  std::string storyline() const { return root + "/storyline.txt"; }
  std::string rules() const { return root + "/rules.txt"; }
  std::string item_bank() const { return root + "/bfi44_placeholder.tsv"; }
  std::string knowledge() const { return root + "/big_five_knowledge.txt"; }
};

}  // namespace arena
