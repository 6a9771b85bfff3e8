#include "arena/cognition/agent.hpp"

#include "arena/cognition/game_text.hpp"
#include "arena/cognition/responses.hpp"
#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::cognition {

using gateway::Message;
using gateway::Purpose;
using gateway::Role;

namespace {

std::string memory_block(const AgentState& state) {
  if (state.memories.empty()) return "(no earlier rounds)";
  std::string out;
  for (const auto& m : state.memories) {
    if (!out.empty()) out += "\n\n";
    out += "Round " + std::to_string(m.round_index) + " summary:\n" + m.summary_text;
  }
  return out;
}

std::string reflections_before(const AgentState& state, int round_index) {
  std::string out;
  for (const auto& r : state.reflections) {
    if (r.round_index >= round_index) continue;
    if (!out.empty()) out += "\n";
    out += "After round " + std::to_string(r.round_index) + ": " + r.text;
  }
  return out.empty() ? "(no reflections yet)" : out;
}

std::int64_t estimate(const std::vector<Message>& messages) {
  std::int64_t n = 0;
  for (const auto& m : messages) n += gateway::estimate_tokens(m.content);
  return n;
}

}  // namespace

Agent::Agent(personas::PersonaSpec persona, std::shared_ptr<const personas::PromptCatalog> prompts,
             const std::string& rules, AgentSettings settings)
    : persona_(std::move(persona)), prompts_(std::move(prompts)), settings_(std::move(settings)) {
  if (!prompts_) throw InputError("agent needs a prompt catalog");
  role_prompt_ = personas::build_role_prompt(persona_, rules, *prompts_).render();
}

gateway::ChatRequest Agent::make_request(Purpose purpose, std::vector<Message> messages) const {
  gateway::ChatRequest req;
  req.model_id = settings_.model_id;
  req.temperature = settings_.temperature;
  req.purpose = purpose;
  req.messages = std::move(messages);
  return req;
}

std::vector<Message> Agent::chat_messages(const AgentState& state, const game::Round& round) const {
  auto build = [&](bool compact) {
    std::string reflection = "(none)";
    std::string plan = "(none)";
    if (!compact) {
      if (const auto* r = state.latest_reflection()) reflection = r->text;
      if (const auto* p = state.latest_plan()) plan = p->long_term_plan;
    }
    const std::string context =
        prompts_->agent_chat.render({{"memory", memory_block(state)}, {"reflection", reflection}, {"plan", plan}});
    std::vector<Message> messages{{Role::System, role_prompt_ + "\n\n" + context}};
    for (const auto& u : round.dialogue) {
      messages.push_back({u.speaker == game::Speaker::Player ? Role::User : Role::Assistant, u.text});
    }
    if (round.dialogue.empty()) {
      messages.push_back({Role::User, "(The player has not said anything yet. Open the conversation.)"});
    } else if (round.dialogue.back().speaker == game::Speaker::Agent) {
      messages.push_back({Role::User, "(The player stays silent. Continue the conversation.)"});
    }
    return messages;
  };
  auto messages = build(false);
  if (estimate(messages) > settings_.context_token_budget) messages = build(true);
  return messages;
}

std::string Agent::agent_chat_reply(gateway::Gateway& gw, gateway::RecordLog& log, const AgentState& state,
                                    const game::Round& round) const {
  if (round.phase != game::Phase::Dialogue) throw PhaseError("agent can only chat during the dialogue phase");
  const auto req = make_request(Purpose::AgentChat, chat_messages(state, round));
  auto parse = [&](const std::string& reply) {
    std::string text = text::trim(reply);
    if (text.empty()) throw TemplateParseError("empty chat reply");
    if (settings_.moderation) settings_.moderation(text);
    return text;
  };
  return gateway::complete_parsed(gw, req, log, parse, settings_.retry);
}

MemoryEntry Agent::summarize_round(gateway::Gateway& gw, gateway::RecordLog& log, const game::Round& resolved,
                                   const std::string& game_status) const {
  if (resolved.phase != game::Phase::Resolved) throw PreconditionError("only resolved rounds can be summarized");
  const std::string prompt =
      prompts_->memory.render({{"dialogue", format_dialogue_for_agent(resolved)}, {"game_status", game_status}});
  const auto req = make_request(Purpose::Memory, {{Role::System, role_prompt_}, {Role::User, prompt}});
  const auto summary = gateway::complete_parsed(gw, req, log, parse_memory, settings_.retry);
  return MemoryEntry{resolved.index, render_memory(summary), game_status};
}

Reflection Agent::reflect(gateway::Gateway& gw, gateway::RecordLog& log, const AgentState& state,
                          const game::Round& resolved, const std::string& game_status) const {
  if (resolved.phase != game::Phase::Resolved) throw PreconditionError("reflection needs at least one resolved round");
  std::string history = memory_block(state);
  history += "\n\nLatest round (" + std::to_string(resolved.index) + ") dialogue:\n" +
             format_dialogue_for_agent(resolved) + "\n\nGame status:\n" + game_status;
  const std::string prompt = prompts_->reflection.render({{"history", history}});
  const auto req = make_request(Purpose::Reflection, {{Role::System, role_prompt_}, {Role::User, prompt}});
  const auto parts = gateway::complete_parsed(gw, req, log, parse_reflection, settings_.retry);
  return Reflection{resolved.index, parts.insight, parts.thoughts, parts.action, render_reflection(parts)};
}

AgentTurnOutput Agent::decide_and_plan(gateway::Gateway& gw, gateway::RecordLog& log, const AgentState& state,
                                       const game::Round& round, const std::string& game_history) const {
  if (round.phase != game::Phase::DecisionPending) throw PhaseError("agent decides only once the dialogue has ended");
  if (round.agent_decision) throw DoubleDecision("agent decision already committed for this round");
  const std::string prompt = prompts_->decide.render({{"game_history", game_history},
                                                      {"memory", memory_block(state)},
                                                      {"reflections", reflections_before(state, round.index)},
                                                      {"dialogue", format_dialogue_for_agent(round)}});
  const auto req = make_request(Purpose::Decide, {{Role::System, role_prompt_}, {Role::User, prompt}});
  const auto reply = gateway::complete_parsed(gw, req, log, parse_decision_reply, settings_.retry);
  return AgentTurnOutput{reply.decision, reply.process, reply.plan};
}

}  // namespace arena::cognition
