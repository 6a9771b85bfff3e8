#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arena/assessment/types.hpp"
#include "arena/metrics/ground_truth.hpp"
#include "arena/metrics/stats.hpp"

namespace arena::metrics {

struct MetricCell {
  TraitId trait = TraitId::Openness;
  assessment::Condition condition = assessment::Condition::All;
  assessment::Method method = assessment::Method::DA;
  std::string model_id;
  std::string bundle;  // bundle token
  std::string group;   // value of the grouping attribute, empty when ungrouped
  double rmse = 0;
  double mae = 0;
  std::size_t n = 0;
  std::optional<ClassificationResult> classification;  // n >= 2 only
};

struct ReportOptions {
  ThresholdRule threshold_rule = ThresholdRule::MedianSplitOnTruth;
  /// Ground-truth attribute to split the grid by.
  std::optional<std::string> group_by;
};

struct MetricReport {
  ThresholdRule threshold_rule = ThresholdRule::MedianSplitOnTruth;
  std::optional<std::string> group_by;
  std::vector<MetricCell> cells;  // sorted by (method, model, bundle, group, condition, trait)

  nlohmann::json to_json() const;
  std::string to_csv() const;
  /// One block per method/model/bundle/group: rows are conditions, columns
  /// are traits with RMSE and MAE.
  std::string to_text() const;
};

/// MissingTruth names every player without ground truth (or without the
/// grouping attribute).
MetricReport build_report(const std::vector<assessment::AssessmentResult>& results,
                          const std::vector<GroundTruth>& truths, const ReportOptions& options = {});

}  // namespace arena::metrics
