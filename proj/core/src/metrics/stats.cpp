#include "arena/metrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arena/errors.hpp"

namespace arena::metrics {

namespace {

void check_pair(const std::vector<double>& pred, const std::vector<double>& truth) {
  if (pred.size() != truth.size()) {
    throw LengthMismatch("prediction and truth lengths differ (" + std::to_string(pred.size()) + " vs " +
                         std::to_string(truth.size()) + ")");
  }
  if (pred.empty()) throw EmptyInput("metric needs at least one pair");
}

double f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

double rmse(const std::vector<double>& pred, const std::vector<double>& truth) {
  check_pair(pred, truth);
  double sum = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += (pred[i] - truth[i]) * (pred[i] - truth[i]);
  return std::sqrt(sum / static_cast<double>(pred.size()));
}

double mae(const std::vector<double>& pred, const std::vector<double>& truth) {
  check_pair(pred, truth);
  double sum = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(pred[i] - truth[i]);
  return sum / static_cast<double>(pred.size());
}

double median(std::vector<double> values) {
  if (values.empty()) throw EmptyInput("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string_view threshold_rule_name(ThresholdRule r) {
  return r == ThresholdRule::MedianSplitOnTruth ? "median_split_on_truth" : "fixed_midpoint_3";
}

std::optional<ThresholdRule> parse_threshold_rule(std::string_view s) {
  if (s == "median_split_on_truth" || s == "median") return ThresholdRule::MedianSplitOnTruth;
  if (s == "fixed_midpoint_3" || s == "midpoint") return ThresholdRule::FixedMidpoint3;
  return std::nullopt;
}

ClassificationResult classify(const std::vector<bool>& pred_high, const std::vector<bool>& truth_high) {
  if (pred_high.size() != truth_high.size()) throw LengthMismatch("label vectors differ in length");
  if (pred_high.empty()) throw EmptyInput("classification needs at least one label");
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred_high.size(); ++i) {
    if (pred_high[i] && truth_high[i]) ++tp;
    else if (!pred_high[i] && !truth_high[i]) ++tn;
    else if (pred_high[i]) ++fp;
    else ++fn;
  }
  ClassificationResult r;
  r.accuracy = static_cast<double>(tp + tn) / static_cast<double>(pred_high.size());
  // The Low class swaps the roles of fp and fn.
  r.macro_f1 = (f1(tp, fp, fn) + f1(tn, fn, fp)) / 2.0;
  r.degenerate = (tp + fn == 0) || (tn + fp == 0);
  return r;
}

ClassificationResult binarize_and_classify(const std::vector<double>& pred, const std::vector<double>& truth,
                                           ThresholdRule rule) {
  if (pred.size() != truth.size()) throw LengthMismatch("prediction and truth lengths differ");
  if (pred.size() < 2) throw EmptyInput("binarized classification needs at least two samples");
  const double threshold = rule == ThresholdRule::MedianSplitOnTruth ? median(truth) : 3.0;
  std::vector<bool> p(pred.size()), t(truth.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    p[i] = pred[i] > threshold;
    t[i] = truth[i] > threshold;
  }
  auto r = classify(p, t);
  r.threshold = threshold;
  return r;
}

}  // namespace arena::metrics
