#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "arena/assessment/item_bank.hpp"

namespace arena::metrics {

/// Self-reported questionnaire scores for one player.
struct GroundTruth {
  std::string player_id;
  std::array<double, 5> scores{};  // O, C, E, A, N
  std::map<std::string, std::string> attributes;
};

/// CSV with a header row. Either `player_id,O,C,E,A,N` or `player_id,q1..qN`
/// (raw 1-5 self-ratings scored with `bank`). Any further columns become
/// attributes usable as report grouping keys.
std::vector<GroundTruth> parse_ground_truth(const std::string& csv, const assessment::ItemBank& bank);
std::vector<GroundTruth> load_ground_truth(const std::string& path, const assessment::ItemBank& bank);

}  // namespace arena::metrics
