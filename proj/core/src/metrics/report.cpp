#include "arena/metrics/report.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::metrics {

using assessment::Condition;
using assessment::Method;
using nlohmann::json;

namespace {

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

using BlockKey = std::tuple<Method, std::string, std::string, std::string>;  // method, model, bundle, group

BlockKey block_of(const MetricCell& c) { return {c.method, c.model_id, c.bundle, c.group}; }

}  // namespace

MetricReport build_report(const std::vector<assessment::AssessmentResult>& results,
                          const std::vector<GroundTruth>& truths, const ReportOptions& options) {
  std::map<std::string, const GroundTruth*> by_player;
  for (const auto& t : truths) by_player[t.player_id] = &t;

  std::set<std::string> missing;
  for (const auto& r : results) {
    const auto it = by_player.find(r.player_id);
    if (it == by_player.end() || (options.group_by && !it->second->attributes.count(*options.group_by))) {
      missing.insert(r.player_id.empty() ? "(unnamed player)" : r.player_id);
    }
  }
  if (!missing.empty()) {
    throw MissingTruth("no ground truth for: " + text::join(std::vector<std::string>(missing.begin(), missing.end()), ", "));
  }

  using CellKey = std::tuple<Method, std::string, std::string, std::string, Condition, TraitId>;
  std::map<CellKey, std::pair<std::vector<double>, std::vector<double>>> samples;
  for (const auto& r : results) {
    const GroundTruth& truth = *by_player.at(r.player_id);
    const std::string group = options.group_by ? truth.attributes.at(*options.group_by) : std::string();
    for (auto t : kAllTraits) {
      auto& [pred, tru] = samples[{r.method, r.model_id, r.bundle.token(), group, r.condition, t}];
      pred.push_back(r.scores.at(t));
      tru.push_back(truth.scores[trait_index(t)]);
    }
  }

  MetricReport report;
  report.threshold_rule = options.threshold_rule;
  report.group_by = options.group_by;
  for (const auto& [key, values] : samples) {
    MetricCell c;
    std::tie(c.method, c.model_id, c.bundle, c.group, c.condition, c.trait) = key;
    c.n = values.first.size();
    c.rmse = rmse(values.first, values.second);
    c.mae = mae(values.first, values.second);
    if (c.n >= 2) c.classification = binarize_and_classify(values.first, values.second, options.threshold_rule);
    report.cells.push_back(std::move(c));
  }
  return report;
}

json MetricReport::to_json() const {
  json cells_json = json::array();
  for (const auto& c : cells) {
    json j{{"trait", std::string(1, trait_code(c.trait))},
           {"condition", assessment::condition_name(c.condition)},
           {"method", assessment::method_name(c.method)},
           {"model_id", c.model_id},
           {"bundle", c.bundle},
           {"rmse", c.rmse},
           {"mae", c.mae},
           {"n", c.n}};
    if (group_by) j["group"] = c.group;
    if (c.classification) {
      j["accuracy"] = c.classification->accuracy;
      j["macro_f1"] = c.classification->macro_f1;
      j["degenerate_split"] = c.classification->degenerate;
      j["threshold"] = c.classification->threshold;
    }
    cells_json.push_back(std::move(j));
  }
  json out{{"threshold_rule", threshold_rule_name(threshold_rule)}, {"cells", cells_json}};
  out["group_by"] = group_by ? json(*group_by) : json(nullptr);
  return out;
}

std::string MetricReport::to_csv() const {
  std::string out = "method,model_id,bundle,group,condition,trait,n,rmse,mae,accuracy,macro_f1,degenerate_split,threshold_rule\n";
  for (const auto& c : cells) {
    out += std::string(assessment::method_name(c.method)) + "," + c.model_id + "," + c.bundle + "," + c.group + "," +
           std::string(assessment::condition_name(c.condition)) + "," + std::string(1, trait_code(c.trait)) + "," +
           std::to_string(c.n) + "," + fmt(c.rmse, 6) + "," + fmt(c.mae, 6) + ",";
    if (c.classification) {
      out += fmt(c.classification->accuracy, 6) + "," + fmt(c.classification->macro_f1, 6) + "," +
             (c.classification->degenerate ? "true" : "false");
    } else {
      out += ",,";
    }
    out += "," + std::string(threshold_rule_name(threshold_rule)) + "\n";
  }
  return out;
}

std::string MetricReport::to_text() const {
  std::map<BlockKey, std::map<std::pair<Condition, TraitId>, const MetricCell*>> blocks;
  for (const auto& c : cells) blocks[block_of(c)][{c.condition, c.trait}] = &c;

  std::string out = "Binarization rule: " + std::string(threshold_rule_name(threshold_rule)) + "\n";
  for (const auto& [key, grid] : blocks) {
    const auto& [method, model, bundle, group] = key;
    out += "\n" + std::string(assessment::method_name(method)) + " | model " + model + " | bundle " +
           perception::ChannelBundle::parse(bundle).label();
    if (group_by) out += " | " + *group_by + "=" + group;
    out += "\n";
    std::string header = "Condition ";
    std::string sub = "          ";
    for (auto t : kAllTraits) {
      std::string name(trait_name(t));
      name.resize(16, ' ');
      header += "| " + name;
      sub += "| RMSE    MAE     ";
    }
    out += header + "|   n\n" + sub + "|\n";
    for (auto cond : assessment::kAllConditions) {
      std::string row(assessment::condition_name(cond));
      bool any = false;
      std::size_t n = 0;
      std::string line = row == "ALL" ? "All" : row;
      line.resize(10, ' ');
      for (auto t : kAllTraits) {
        const auto it = grid.find({cond, t});
        if (it == grid.end()) {
          line += "| -       -       ";
          continue;
        }
        any = true;
        n = it->second->n;
        std::string a = fmt(it->second->rmse, 3);
        std::string b = fmt(it->second->mae, 3);
        a.resize(8, ' ');
        b.resize(8, ' ');
        line += "| " + a + b;
      }
      if (any) out += line + "| " + std::to_string(n) + "\n";
    }
  }
  return out;
}

}  // namespace arena::metrics
