#include "arena/data_paths.hpp"

#include <cstdlib>

#ifndef ARENA_DEFAULT_DATA_DIR
#define ARENA_DEFAULT_DATA_DIR "data"
#endif

namespace arena {

DataPaths DataPaths::resolve(const std::string& explicit_root) {
  if (!explicit_root.empty()) return DataPaths{explicit_root};
  if (const char* env = std::getenv("ARENA_DATA_DIR"); env && *env) return DataPaths{env};
  return DataPaths{ARENA_DEFAULT_DATA_DIR};
}

}  // namespace arena
