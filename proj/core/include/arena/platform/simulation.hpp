#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "arena/platform/runtime.hpp"

namespace arena::platform {

struct AssessPlan {
  std::vector<assessment::Method> methods;
  std::vector<assessment::Condition> conditions;
  std::vector<perception::ChannelBundle> bundles;

  /// Both methods, all six conditions, all three bundles.
  static AssessPlan full_matrix();
};

/// Identity and persona of the index-th simulated player for a seed. The
/// target trait cycles through O, C, E, A, N.
struct SimulatedIdentity {
  std::string session_id;
  std::string player_id;
  std::array<TraitId, 5> agent_order;
  SimulatedPlayerSpec spec;
};
SimulatedIdentity simulated_identity(const personas::PersonaBank& bank, std::uint64_t seed, int index);

/// Plays one full session with a simulated player, then runs `plan` if given.
SessionArchive simulate_player(const std::shared_ptr<const Resources>& resources,
                               const std::shared_ptr<gateway::Gateway>& gateway, const std::shared_ptr<Clock>& clock,
                               std::uint64_t seed, int index, const std::optional<AssessPlan>& plan = std::nullopt);

}  // namespace arena::platform
