#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "arena/assessment/item_bank.hpp"
#include "arena/errors.hpp"
#include "arena/metrics/ground_truth.hpp"
#include "arena/metrics/report.hpp"
#include "arena/metrics/stats.hpp"
#include "test_support.hpp"

using namespace arena;
using namespace arena::metrics;

namespace {

constexpr double kTol = 1e-9;

double oracle_rmse(const std::vector<double>& p, const std::vector<double>& t) {
  long double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (long double)(p[i] - t[i]) * (p[i] - t[i]);
  return std::sqrt(static_cast<double>(s / p.size()));
}

double oracle_mae(const std::vector<double>& p, const std::vector<double>& t) {
  long double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - t[i]);
  return static_cast<double>(s / p.size());
}

/// Per-class precision/recall computed by counting, F1 = 0 when undefined.
double oracle_macro_f1(const std::vector<bool>& p, const std::vector<bool>& t) {
  double total = 0;
  for (bool cls : {true, false}) {
    int pred_pos = 0, true_pos = 0, hit = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      pred_pos += p[i] == cls;
      true_pos += t[i] == cls;
      hit += p[i] == cls && t[i] == cls;
    }
    const double precision = pred_pos ? double(hit) / pred_pos : 0.0;
    const double recall = true_pos ? double(hit) / true_pos : 0.0;
    total += precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
  }
  return total / 2;
}

assessment::AssessmentResult result_for(const std::string& player, std::array<double, 5> scores,
                                        assessment::Condition c = assessment::Condition::All,
                                        assessment::Method m = assessment::Method::DA) {
  assessment::AssessmentResult r;
  r.player_id = player;
  r.method = m;
  r.condition = c;
  r.model_id = "gpt-4o";
  r.bundle = perception::ChannelBundle::all();
  r.scores.values = scores;
  return r;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("rmse and mae match direct computation on random vectors") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> score(1.0, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> p(1 + rng() % 60), t(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = score(rng);
        t[i] = score(rng);
      }
      REQUIRE(std::abs(rmse(p, t) - oracle_rmse(p, t)) <= kTol);
      REQUIRE(std::abs(mae(p, t) - oracle_mae(p, t)) <= kTol);
      REQUIRE(rmse(p, t) + kTol >= mae(p, t));
      REQUIRE(std::abs(rmse(p, t) - rmse(t, p)) <= kTol);
    }
  }

  TEST_CASE("error metrics properties") {
    const std::vector<double> v{1, 2.5, 5};
    CHECK(rmse(v, v) == 0.0);
    CHECK(mae(v, v) == 0.0);
    CHECK(std::abs(rmse({1, 1}, {2, 4}) - std::sqrt(5.0)) <= kTol);
    CHECK(std::abs(mae({1, 1}, {2, 4}) - 2.0) <= kTol);
    CHECK_THROWS_AS(rmse({1}, {1, 2}), LengthMismatch);
    CHECK_THROWS_AS(mae({}, {}), EmptyInput);
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
  }

  TEST_CASE("four-sample classification oracle") {
    const auto r = classify({true, false, false, false}, {true, true, false, false});
    CHECK(std::abs(r.accuracy - 0.75) <= kTol);
    CHECK(std::abs(r.macro_f1 - (2.0 / 3.0 + 0.8) / 2.0) <= kTol);
    CHECK_FALSE(r.degenerate);
  }

  TEST_CASE("classification matches brute force counting") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<bool> p(2 + rng() % 30), t(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = rng() & 1;
        t[i] = rng() & 1;
      }
      const auto r = classify(p, t);
      int agree = 0;
      for (std::size_t i = 0; i < p.size(); ++i) agree += p[i] == t[i];
      REQUIRE(std::abs(r.accuracy - double(agree) / p.size()) <= kTol);
      REQUIRE(std::abs(r.macro_f1 - oracle_macro_f1(p, t)) <= kTol);
      REQUIRE(r.macro_f1 >= 0.0);
      REQUIRE(r.macro_f1 <= 1.0);
    }
  }

  TEST_CASE("single-class truth is a degenerate split") {
    const auto r = classify({true, true, false}, {true, true, true});
    CHECK(r.degenerate);
    CHECK(std::abs(r.macro_f1 - oracle_macro_f1({true, true, false}, {true, true, true})) <= kTol);
    CHECK(std::abs(r.macro_f1 - 0.4) <= kTol);
  }

  TEST_CASE("threshold rules use strict greater-than") {
    const auto med = binarize_and_classify({3.0, 4.0, 2.0, 5.0}, {3.0, 4.0, 2.0, 5.0}, ThresholdRule::MedianSplitOnTruth);
    CHECK(med.threshold == 3.5);
    CHECK(med.accuracy == 1.0);
    const auto mid = binarize_and_classify({3.0, 3.1}, {3.0, 2.9}, ThresholdRule::FixedMidpoint3);
    CHECK(mid.threshold == 3.0);
    CHECK(std::abs(mid.accuracy - 0.5) <= kTol);
    CHECK_THROWS_AS(binarize_and_classify({3.0}, {3.0}, ThresholdRule::FixedMidpoint3), EmptyInput);
    CHECK(parse_threshold_rule("median") == ThresholdRule::MedianSplitOnTruth);
    CHECK(parse_threshold_rule("fixed_midpoint_3") == ThresholdRule::FixedMidpoint3);
    CHECK_FALSE(parse_threshold_rule("mean"));
  }

  TEST_CASE("ground truth from trait columns and from raw items") {
    const auto bank = assessment::ItemBank::load(testing::data_dir() + "/bfi44_placeholder.tsv");
    const auto direct = parse_ground_truth("player_id,O,C,E,A,N,cohort\np1,4,3.5,2,5,1,\"a, b\"\n", bank);
    REQUIRE(direct.size() == 1);
    CHECK(direct[0].scores == std::array<double, 5>{4, 3.5, 2, 5, 1});
    CHECK(direct[0].attributes.at("cohort") == "a, b");

    std::string header = "player_id";
    std::string row = "p2";
    for (int q = 1; q <= 44; ++q) {
      header += ",q" + std::to_string(q);
      row += ",3";
    }
    const auto items = parse_ground_truth(header + "\n" + row + "\n", bank);
    REQUIRE(items.size() == 1);
    for (double s : items[0].scores) CHECK(std::abs(s - 3.0) <= kTol);

    CHECK_THROWS_AS(parse_ground_truth("player_id,O,C,E,A\np,1,2,3,4\n", bank), DataFileError);
    CHECK_THROWS_AS(parse_ground_truth("player_id,O,C,E,A,N\np,1,2,3,4,x\n", bank), DataFileError);
    CHECK_THROWS_AS(parse_ground_truth("player_id,O,C,E,A,N\np,1,2,3,4,5\np,1,2,3,4,5\n", bank), DataFileError);
  }

  TEST_CASE("report grid cardinality and values") {
    std::vector<assessment::AssessmentResult> results;
    std::vector<GroundTruth> truths;
    for (int p = 0; p < 4; ++p) {
      const std::string id = "p" + std::to_string(p);
      truths.push_back({id, {1.0 + p, 2, 3, 4, 5}, {{"group", p % 2 ? "odd" : "even"}}});
      for (auto c : assessment::kAllConditions) results.push_back(result_for(id, {2.0 + p, 2, 3, 4, 4}, c));
    }
    const auto report = build_report(results, truths);
    CHECK(report.cells.size() == 6 * 5);
    for (const auto& cell : report.cells) {
      CHECK(cell.n == 4);
      REQUIRE(cell.classification);
      if (cell.trait == TraitId::Openness) CHECK(std::abs(cell.rmse - 1.0) <= kTol);
      if (cell.trait == TraitId::Neuroticism) CHECK(std::abs(cell.mae - 1.0) <= kTol);
      if (cell.trait == TraitId::Conscientiousness) CHECK(cell.rmse == 0.0);
    }
    const auto j = report.to_json();
    CHECK(j["cells"].size() == 30);
    CHECK(report.to_csv().find("rmse") != std::string::npos);
    const auto text = report.to_text();
    CHECK(text.find("\nAll ") != std::string::npos);
    CHECK(text.find("RMSE") != std::string::npos);
  }

  TEST_CASE("grouping partitions the samples") {
    std::vector<assessment::AssessmentResult> results;
    std::vector<GroundTruth> truths;
    for (int p = 0; p < 6; ++p) {
      const std::string id = "p" + std::to_string(p);
      truths.push_back({id, {3, 3, 3, 3, 3}, {{"site", p < 2 ? "x" : "y"}}});
      results.push_back(result_for(id, {3, 3, 3, 3, 3}));
    }
    ReportOptions opts;
    opts.group_by = "site";
    const auto report = build_report(results, truths, opts);
    std::map<std::string, std::size_t> n;
    for (const auto& c : report.cells)
      if (c.trait == TraitId::Openness) n[c.group] = c.n;
    CHECK(n == std::map<std::string, std::size_t>{{"x", 2}, {"y", 4}});
    CHECK(report.cells.size() == 10);
  }

  TEST_CASE("missing ground truth names the players") {
    std::vector<GroundTruth> truths{{"known", {3, 3, 3, 3, 3}, {}}};
    std::vector<assessment::AssessmentResult> results{result_for("known", {3, 3, 3, 3, 3}),
                                                      result_for("ghost", {3, 3, 3, 3, 3})};
    try {
      build_report(results, truths);
      FAIL("expected MissingTruth");
    } catch (const MissingTruth& e) {
      CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
    ReportOptions opts;
    opts.group_by = "site";
    CHECK_THROWS_AS(build_report({result_for("known", {3, 3, 3, 3, 3})}, truths, opts), MissingTruth);
  }

  TEST_CASE("single-sample cells carry no classification") {
    const auto report = build_report({result_for("a", {3, 3, 3, 3, 3})}, {{"a", {3, 3, 3, 3, 3}, {}}});
    for (const auto& c : report.cells) CHECK_FALSE(c.classification);
  }
}
