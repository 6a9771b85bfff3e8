#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arena/assessment/item_bank.hpp"
#include "arena/assessment/types.hpp"
#include "arena/gateway/retry.hpp"
#include "arena/game/session.hpp"
#include "arena/perception/channels.hpp"
#include "arena/personas/prompt_catalog.hpp"

namespace arena::assessment {

struct AssessmentSettings {
  std::string model_id = "gpt-4o";
  gateway::RetryPolicy retry;
  /// Concurrent item calls for Que-based assessment.
  int parallelism = 4;
  /// When set, items are presented in a seeded shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Knowledge text for the {knowledge} slot; '#' comment lines are dropped.
std::string load_knowledge(const std::string& path);

/// Everything stored about a finished (or abandoned) session that an
/// assessment may read.
struct SessionEvidence {
  const game::GameSession* session = nullptr;
  const std::vector<cognition::AgentState>* agents = nullptr;  // aligned with encounters
  const std::vector<perception::PerceptionRecord>* perception = nullptr;

  /// Encounters a condition may see. Single-agent conditions return exactly
  /// one encounter; All returns every complete encounter in agent order.
  std::vector<perception::EncounterData> select(Condition c) const;
};

class Assessor {
public:
  Assessor(std::shared_ptr<const personas::PromptCatalog> prompts, std::string rules, std::string knowledge,
           std::shared_ptr<const ItemBank> items, AssessmentSettings settings);

  AssessmentResult direct_assess(gateway::Gateway& gw, gateway::RecordLog& log,
                                 const perception::AssessmentInput& input) const;

  /// One call per item; answers keyed by item number, so presentation order
  /// cannot change the scores. Throws ItemFailure listing failed items.
  AssessmentResult que_assess(gateway::Gateway& gw, gateway::RecordLog& log,
                              const perception::AssessmentInput& input) const;

  std::string direct_prompt(const perception::AssessmentInput& input) const;
  std::string que_prompt(const perception::AssessmentInput& input, const BfiItem& item) const;

  const AssessmentSettings& settings() const noexcept { return settings_; }
  const ItemBank& items() const noexcept { return *items_; }
  const std::string& prompt_version() const noexcept { return prompts_->version; }

private:
  std::map<std::string, std::string> context_slots(const perception::AssessmentInput& input) const;
  gateway::ChatRequest make_request(gateway::Purpose purpose, std::string prompt) const;

  std::shared_ptr<const personas::PromptCatalog> prompts_;
  std::string rules_;
  std::string knowledge_;
  std::shared_ptr<const ItemBank> items_;
  AssessmentSettings settings_;
};

struct MatrixCell {
  Method method = Method::DA;
  Condition condition = Condition::All;
  perception::ChannelBundle bundle;
  std::optional<AssessmentResult> result;
  std::string error_code;  // empty on success
  std::string error_message;
  gateway::RecordLog records;
};

/// Runs the requested cross product. A failing cell is annotated with its
/// error and never stops its siblings. Cells listed in `skip_keys` (already
/// stored) are not run and not returned. Throws ConsentError up front.
std::vector<MatrixCell> assess_matrix(const Assessor& assessor, gateway::Gateway& gw, const SessionEvidence& evidence,
                                      const std::vector<Method>& methods, const std::vector<Condition>& conditions,
                                      const std::vector<perception::ChannelBundle>& bundles,
                                      const std::vector<std::string>& skip_keys = {});

}  // namespace arena::assessment
