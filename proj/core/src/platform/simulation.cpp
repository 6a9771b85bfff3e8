#include "arena/platform/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace arena::platform {

AssessPlan AssessPlan::full_matrix() {
  AssessPlan p;
  p.methods = {assessment::Method::DA, assessment::Method::QA};
  p.conditions.assign(assessment::kAllConditions.begin(), assessment::kAllConditions.end());
  p.bundles = {perception::ChannelBundle::text_behavior(), perception::ChannelBundle::text_behavior_traits(),
               perception::ChannelBundle::all()};
  return p;
}

SimulatedIdentity simulated_identity(const personas::PersonaBank& bank, std::uint64_t seed, int index) {
  SimulatedIdentity id;
  char buf[64];
  std::snprintf(buf, sizeof buf, "sim-%llu-%03d", static_cast<unsigned long long>(seed), index + 1);
  id.session_id = buf;
  std::snprintf(buf, sizeof buf, "player-%llu-%03d", static_cast<unsigned long long>(seed), index + 1);
  id.player_id = buf;
  id.agent_order = kAllTraits;
  std::mt19937_64 rng(seed * 1000003ull + static_cast<std::uint64_t>(index));
  for (std::size_t i = id.agent_order.size(); i > 1; --i) {
    std::swap(id.agent_order[i - 1], id.agent_order[static_cast<std::size_t>(rng() % i)]);
  }
  const TraitId target = kAllTraits[static_cast<std::size_t>((seed + static_cast<std::uint64_t>(index)) % 5)];
  id.spec = extreme_persona(bank, target, true, seed + static_cast<std::uint64_t>(index));
  return id;
}

SessionArchive simulate_player(const std::shared_ptr<const Resources>& resources,
                               const std::shared_ptr<gateway::Gateway>& gateway, const std::shared_ptr<Clock>& clock,
                               std::uint64_t seed, int index, const std::optional<AssessPlan>& plan) {
  const auto id = simulated_identity(resources->personas, seed, index);
  const auto& cfg = resources->config;
  game::SessionConfig sc;
  sc.rounds_per_encounter = cfg.rounds_per_encounter;
  sc.max_exchanges = cfg.max_exchanges;
  game::GameSession session(id.session_id, id.player_id, id.agent_order, true, sc, clock->now_ms());
  SessionRuntime rt(resources, gateway, clock, std::move(session), id.spec);

  SimPlayerSettings ps;
  ps.model_id = cfg.sim_player_model;
  ps.temperature = cfg.sim_player_temperature;
  ps.max_messages = cfg.max_exchanges ? std::min(cfg.sim_max_messages, *cfg.max_exchanges) : cfg.sim_max_messages;
  ps.retry.max_reasks = cfg.reasks;
  const SimulatedPlayer player(id.spec, resources->prompts, resources->story.rules, ps);

  rt.run_simulation(player);
  rt.finalize();
  if (plan) rt.assess(plan->methods, plan->conditions, plan->bundles);
  return rt.archive();
}

}  // namespace arena::platform
