#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace arena::metrics {

/// sqrt(mean((pred - truth)^2)). LengthMismatch / EmptyInput on bad input.
double rmse(const std::vector<double>& pred, const std::vector<double>& truth);
/// mean(|pred - truth|).
double mae(const std::vector<double>& pred, const std::vector<double>& truth);

double median(std::vector<double> values);

enum class ThresholdRule { MedianSplitOnTruth, FixedMidpoint3 };
std::string_view threshold_rule_name(ThresholdRule r);  // "median_split_on_truth" / "fixed_midpoint_3"
std::optional<ThresholdRule> parse_threshold_rule(std::string_view s);

struct ClassificationResult {
  double accuracy = 0;  // fraction in [0, 1]
  double macro_f1 = 0;  // fraction in [0, 1]
  /// Truth labels contain a single class; the absent class contributes F1 = 0.
  bool degenerate = false;
  double threshold = 0;
};

/// Accuracy and unweighted two-class macro-F1 over high/low labels.
ClassificationResult classify(const std::vector<bool>& pred_high, const std::vector<bool>& truth_high);

/// A value is High when strictly greater than the threshold. The threshold is
/// the median of `truth` or the scale midpoint 3. Needs at least two samples.
ClassificationResult binarize_and_classify(const std::vector<double>& pred, const std::vector<double>& truth,
                                           ThresholdRule rule);

}  // namespace arena::metrics
