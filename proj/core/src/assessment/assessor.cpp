#include "arena/assessment/assessor.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "arena/assessment/responses.hpp"
#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::assessment {

using gateway::Message;
using gateway::Purpose;
using gateway::Role;

std::string load_knowledge(const std::string& path) {
  std::vector<std::string> kept;
  for (const auto& line : text::split_lines(text::read_file(path))) {
    if (!line.empty() && line.front() == '#') continue;
    kept.push_back(line);
  }
  return text::trim(text::join(kept, "\n"));
}

std::vector<perception::EncounterData> SessionEvidence::select(Condition c) const {
  if (!session || !agents || !perception) throw InputError("session evidence is incomplete");
  const auto& encounters = session->encounters();
  if (agents->size() != encounters.size()) throw InputError("agent states are not aligned with encounters");

  auto data_for = [&](std::size_t pos) {
    perception::EncounterData d;
    d.position = pos;
    d.encounter = &encounters[pos];
    d.agent_state = &(*agents)[pos];
    for (const auto& p : *perception) {
      if (p.encounter_pos == pos) d.perception.push_back(&p);
    }
    return d;
  };

  std::vector<perception::EncounterData> out;
  if (const auto trait = condition_trait(c)) {
    for (std::size_t i = 0; i < encounters.size(); ++i) {
      if (encounters[i].agent_trait != *trait) continue;
      if (!encounters[i].complete()) {
        throw PreconditionError("encounter with the " + std::string(trait_name(*trait)) + " agent is not complete");
      }
      out.push_back(data_for(i));
    }
  } else {
    for (std::size_t i = 0; i < encounters.size(); ++i) {
      if (encounters[i].complete()) out.push_back(data_for(i));
    }
  }
  if (out.empty()) throw PreconditionError("no complete encounter is available for condition " +
                                           std::string(condition_name(c)));
  return out;
}

Assessor::Assessor(std::shared_ptr<const personas::PromptCatalog> prompts, std::string rules, std::string knowledge,
                   std::shared_ptr<const ItemBank> items, AssessmentSettings settings)
    : prompts_(std::move(prompts)),
      rules_(std::move(rules)),
      knowledge_(std::move(knowledge)),
      items_(std::move(items)),
      settings_(std::move(settings)) {
  if (!prompts_ || !items_) throw InputError("assessor needs prompts and an item bank");
  if (settings_.parallelism < 1) throw InputError("assessment parallelism must be at least 1");
}

std::map<std::string, std::string> Assessor::context_slots(const perception::AssessmentInput& input) const {
  input.bundle.validate();
  std::string fine;
  if (input.bundle.include_traits) fine = input.traits;
  if (input.bundle.include_emotion) fine += "\n\nEmotion labels of the player's utterances:\n" + input.emotions;
  if (fine.empty()) fine = "(not provided)";
  return {{"rules", rules_},
          {"chat_memory", input.memory},
          {"game_memory", input.behavior},
          {"dialogue", input.dialogue},
          {"fine_grained_traits", fine},
          {"knowledge", knowledge_}};
}

std::string Assessor::direct_prompt(const perception::AssessmentInput& input) const {
  return prompts_->direct_assess.render(context_slots(input));
}

std::string Assessor::que_prompt(const perception::AssessmentInput& input, const BfiItem& item) const {
  auto slots = context_slots(input);
  slots["transformed_question"] = item.transformed_third_person;
  return prompts_->que_assess.render(slots);
}

gateway::ChatRequest Assessor::make_request(Purpose purpose, std::string prompt) const {
  gateway::ChatRequest req;
  req.model_id = settings_.model_id;
  req.temperature = 0.0;
  req.purpose = purpose;
  req.messages = {Message{Role::System, std::move(prompt)},
                  Message{Role::User, "Provide your response according to the template."}};
  return req;
}

AssessmentResult Assessor::direct_assess(gateway::Gateway& gw, gateway::RecordLog& log,
                                         const perception::AssessmentInput& input) const {
  const auto req = make_request(Purpose::DirectAssess, direct_prompt(input));
  std::string accepted;
  auto parse = [&](const std::string& reply) {
    auto parsed = parse_direct_reply(reply);
    accepted = reply;
    return parsed;
  };
  const DirectReply reply = gateway::complete_parsed(gw, req, log, parse, settings_.retry);

  AssessmentResult r;
  r.method = Method::DA;
  r.bundle = input.bundle;
  r.model_id = settings_.model_id;
  r.prompt_version = prompts_->version;
  r.raw_output = accepted;
  for (std::size_t i = 0; i < 5; ++i) {
    r.scores.values[i] = reply.ratings[i];
    r.scores.reasons[i] = reply.reasons[i];
  }
  r.scores.validate();
  return r;
}

AssessmentResult Assessor::que_assess(gateway::Gateway& gw, gateway::RecordLog& log,
                                      const perception::AssessmentInput& input) const {
  const auto& items = items_->items();
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  if (settings_.shuffle_seed) {
    std::mt19937_64 rng(*settings_.shuffle_seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
    }
  }

  std::vector<std::optional<ItemAnswer>> answers(items.size());
  std::vector<gateway::RecordLog> logs(items.size());
  std::vector<std::string> errors(items.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      const std::size_t idx = order[k];
      const BfiItem& item = items[idx];
      try {
        std::string accepted;
        auto parse = [&](const std::string& reply) {
          auto parsed = parse_que_reply(reply);
          accepted = reply;
          return parsed;
        };
        const auto reply = gateway::complete_parsed(gw, make_request(Purpose::QueAssess, que_prompt(input, item)),
                                                    logs[idx], parse, settings_.retry);
        ItemAnswer a;
        a.number = item.number;
        a.option = reply.answer;
        a.value = option_value(reply.answer);
        a.keyed_value = item.reverse_keyed ? reverse_key(a.value) : a.value;
        a.reason = reply.reason;
        a.rating_process = reply.rating_process;
        a.raw_output = accepted;
        answers[idx] = std::move(a);
      } catch (const std::exception& e) {
        errors[idx] = e.what();
      }
    }
  };

  const int workers = std::min<int>(settings_.parallelism, static_cast<int>(items.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& l = logs[order[k]];
    log.insert(log.end(), std::make_move_iterator(l.begin()), std::make_move_iterator(l.end()));
  }

  std::vector<int> failed;
  std::string detail;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (answers[i]) continue;
    failed.push_back(items[i].number);
    if (detail.empty()) detail = errors[i];
  }
  if (!failed.empty()) {
    throw ItemFailure(failed, std::to_string(failed.size()) + " questionnaire item(s) failed; first error: " + detail);
  }

  AssessmentResult r;
  r.method = Method::QA;
  r.bundle = input.bundle;
  r.model_id = settings_.model_id;
  r.prompt_version = prompts_->version;
  r.item_bank_version = items_->version();
  std::map<int, int> raw;
  for (auto& a : answers) {
    raw[a->number] = a->value;
    r.items.push_back(std::move(*a));
  }
  r.scores.values = score_items(*items_, raw);
  r.scores.validate();
  return r;
}

std::vector<MatrixCell> assess_matrix(const Assessor& assessor, gateway::Gateway& gw, const SessionEvidence& evidence,
                                      const std::vector<Method>& methods, const std::vector<Condition>& conditions,
                                      const std::vector<perception::ChannelBundle>& bundles,
                                      const std::vector<std::string>& skip_keys) {
  if (!evidence.session) throw InputError("session evidence is incomplete");
  evidence.session->require_consent();
  for (const auto& b : bundles) b.validate();

  std::vector<MatrixCell> cells;
  for (auto method : methods) {
    for (auto condition : conditions) {
      for (const auto& bundle : bundles) {
        AssessmentResult probe;
        probe.method = method;
        probe.condition = condition;
        probe.bundle = bundle;
        probe.model_id = assessor.settings().model_id;
        if (std::find(skip_keys.begin(), skip_keys.end(), probe.cell_key()) != skip_keys.end()) continue;

        MatrixCell cell;
        cell.method = method;
        cell.condition = condition;
        cell.bundle = bundle;
        try {
          const auto input = perception::assemble_channels(evidence.select(condition), bundle,
                                                           condition == Condition::All);
          auto result = method == Method::DA ? assessor.direct_assess(gw, cell.records, input)
                                             : assessor.que_assess(gw, cell.records, input);
          result.condition = condition;
          result.session_id = evidence.session->session_id();
          result.player_id = evidence.session->player_id();
          cell.result = std::move(result);
        } catch (const Error& e) {
          cell.error_code = e.code();
          cell.error_message = e.what();
        } catch (const std::exception& e) {
          cell.error_code = "internal_error";
          cell.error_message = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace arena::assessment
