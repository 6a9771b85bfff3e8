#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/perception/channels.hpp"
#include "arena/traits.hpp"

namespace arena::assessment {

enum class Method { DA, QA };
std::string_view method_name(Method m);  // "DA" / "QA"
std::optional<Method> parse_method(std::string_view s);

/// Single-agent conditions use that agent's encounter only; All concatenates
/// every encounter in agent order.
enum class Condition { O, C, E, A, N, All };
inline constexpr std::array<Condition, 6> kAllConditions = {Condition::O, Condition::C, Condition::E,
                                                            Condition::A, Condition::N, Condition::All};
std::string_view condition_name(Condition c);  // "O" ... "N", "ALL"
std::optional<Condition> parse_condition(std::string_view s);
std::optional<TraitId> condition_trait(Condition c);

/// Five scores in [1, 5], canonical O, C, E, A, N order.
struct TraitScores {
  std::array<double, 5> values{};
  std::array<std::string, 5> reasons;

  double at(TraitId t) const { return values[trait_index(t)]; }
  /// RangeError when any score is outside [1, 5].
  void validate() const;
  friend bool operator==(const TraitScores&, const TraitScores&) = default;
};

struct ItemAnswer {
  int number = 0;
  char option = 'C';
  int value = 3;        // option value before keying
  int keyed_value = 3;  // after reverse keying
  std::string reason;
  std::string rating_process;
  std::string raw_output;
  friend bool operator==(const ItemAnswer&, const ItemAnswer&) = default;
};

struct AssessmentResult {
  Method method = Method::DA;
  Condition condition = Condition::All;
  perception::ChannelBundle bundle;
  std::string model_id;
  std::string session_id;
  std::string player_id;
  std::string prompt_version;
  std::string item_bank_version;  // QA only
  TraitScores scores;
  std::string raw_output;          // DA: accepted reply
  std::vector<ItemAnswer> items;   // QA: one per item, by item number

  /// (method, condition, bundle, model): the idempotence key within a session.
  std::string cell_key() const;
  friend bool operator==(const AssessmentResult&, const AssessmentResult&) = default;
};

nlohmann::json to_json(const AssessmentResult& r);
AssessmentResult assessment_result_from_json(const nlohmann::json& j);

}  // namespace arena::assessment
