#include "arena/assessment/types.hpp"

#include <nlohmann/json.hpp>

#include "arena/errors.hpp"

namespace arena::assessment {

using nlohmann::json;

std::string_view method_name(Method m) { return m == Method::DA ? "DA" : "QA"; }

std::optional<Method> parse_method(std::string_view s) {
  if (s == "DA" || s == "da") return Method::DA;
  if (s == "QA" || s == "qa") return Method::QA;
  return std::nullopt;
}

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::O: return "O";
    case Condition::C: return "C";
    case Condition::E: return "E";
    case Condition::A: return "A";
    case Condition::N: return "N";
    case Condition::All: return "ALL";
  }
  return "?";
}

std::optional<Condition> parse_condition(std::string_view s) {
  for (auto c : kAllConditions) {
    if (condition_name(c) == s) return c;
  }
  if (s == "all" || s == "All") return Condition::All;
  return std::nullopt;
}

std::optional<TraitId> condition_trait(Condition c) {
  switch (c) {
    case Condition::O: return TraitId::Openness;
    case Condition::C: return TraitId::Conscientiousness;
    case Condition::E: return TraitId::Extraversion;
    case Condition::A: return TraitId::Agreeableness;
    case Condition::N: return TraitId::Neuroticism;
    case Condition::All: return std::nullopt;
  }
  return std::nullopt;
}

void TraitScores::validate() const {
  for (auto t : kAllTraits) {
    const double v = at(t);
    if (!(v >= 1.0 && v <= 5.0)) {
      throw RangeError(std::string(trait_name(t)) + " score " + std::to_string(v) + " is outside [1, 5]");
    }
  }
}

std::string AssessmentResult::cell_key() const {
  return std::string(method_name(method)) + "|" + std::string(condition_name(condition)) + "|" + bundle.token() + "|" +
         model_id;
}

json to_json(const AssessmentResult& r) {
  json scores = json::object();
  json reasons = json::object();
  for (auto t : kAllTraits) {
    scores[std::string(1, trait_code(t))] = r.scores.at(t);
    reasons[std::string(1, trait_code(t))] = r.scores.reasons[trait_index(t)];
  }
  json items = json::array();
  for (const auto& a : r.items) {
    items.push_back({{"number", a.number},
                     {"option", std::string(1, a.option)},
                     {"value", a.value},
                     {"keyed_value", a.keyed_value},
                     {"reason", a.reason},
                     {"rating_process", a.rating_process},
                     {"raw_output", a.raw_output}});
  }
  return json{{"method", method_name(r.method)},
              {"condition", condition_name(r.condition)},
              {"bundle", r.bundle.token()},
              {"model_id", r.model_id},
              {"session_id", r.session_id},
              {"player_id", r.player_id},
              {"prompt_version", r.prompt_version},
              {"item_bank_version", r.item_bank_version},
              {"scores", scores},
              {"reasons", reasons},
              {"raw_output", r.raw_output},
              {"items", items}};
}

AssessmentResult assessment_result_from_json(const json& j) {
  try {
    AssessmentResult r;
    const auto method = parse_method(j.at("method").get<std::string>());
    if (!method) throw InputError("unknown assessment method");
    r.method = *method;
    const auto condition = parse_condition(j.at("condition").get<std::string>());
    if (!condition) throw InputError("unknown assessment condition");
    r.condition = *condition;
    r.bundle = perception::ChannelBundle::parse(j.at("bundle").get<std::string>());
    r.model_id = j.at("model_id").get<std::string>();
    r.session_id = j.value("session_id", "");
    r.player_id = j.value("player_id", "");
    r.prompt_version = j.value("prompt_version", "");
    r.item_bank_version = j.value("item_bank_version", "");
    for (auto t : kAllTraits) {
      const std::string code(1, trait_code(t));
      r.scores.values[trait_index(t)] = j.at("scores").at(code).get<double>();
      if (j.contains("reasons") && j["reasons"].contains(code)) {
        r.scores.reasons[trait_index(t)] = j["reasons"][code].get<std::string>();
      }
    }
    r.raw_output = j.value("raw_output", "");
    for (const auto& a : j.value("items", json::array())) {
      ItemAnswer ans;
      ans.number = a.at("number").get<int>();
      const auto opt = a.at("option").get<std::string>();
      if (opt.size() != 1) throw InputError("item option must be a single letter");
      ans.option = opt[0];
      ans.value = a.at("value").get<int>();
      ans.keyed_value = a.at("keyed_value").get<int>();
      ans.reason = a.value("reason", "");
      ans.rating_process = a.value("rating_process", "");
      ans.raw_output = a.value("raw_output", "");
      r.items.push_back(std::move(ans));
    }
    r.scores.validate();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed assessment result: ") + e.what());
  }
}

}  // namespace arena::assessment
