#include "arena/cognition/responses.hpp"

#include "arena/errors.hpp"
#include "arena/structured.hpp"
#include "arena/text.hpp"

namespace arena::cognition {

namespace {

const std::string kDecisionAnalysis = "Decision Analysis";
const std::string kDialogueContext = "Dialogue Context";
const std::string kFactBased = "Fact-Based Reasoning";

const std::string kObserve = "As an agent, I observe that ";
const std::string kBelieve = ". I believe that ";
const std::string kBased = ". Based on what I have observed and reflected upon, I ";

const std::string kProcess = "Decision Making Process";
const std::string kFinal = "Final Decision";
const std::string kPlan = "Long-Term Plan";

std::size_t find_ci(std::string_view haystack, std::string_view needle, std::size_t from = 0) {
  const std::string h = text::to_lower(haystack);
  const std::string n = text::to_lower(needle);
  return h.find(n, from);
}

std::string strip_final_period(std::string s) {
  s = text::trim(s);
  while (!s.empty() && s.back() == '.') s.pop_back();
  return text::trim(s);
}

}  // namespace

std::string render_memory(const MemorySummary& m) {
  return "### " + kDecisionAnalysis + ":\n" + m.decision_analysis + "\n### " + kDialogueContext + ":\n" +
         m.dialogue_context + "\n### " + kFactBased + ":\n" + m.fact_based_reasoning;
}

MemorySummary parse_memory(std::string_view reply) {
  const auto slots = structured::require_slots(reply, {kDecisionAnalysis, kDialogueContext, kFactBased}, "memory");
  return MemorySummary{slots.at(kDecisionAnalysis), slots.at(kDialogueContext), slots.at(kFactBased)};
}

std::string render_reflection(const ReflectionParts& r) {
  return kObserve + r.insight + kBelieve + r.thoughts + kBased + r.action + ".";
}

ReflectionParts parse_reflection(std::string_view reply) {
  const std::string observe = "I observe that";
  const std::string believe = "I believe that";
  const std::string based = "Based on what I have observed and reflected upon, I";
  const auto p1 = find_ci(reply, observe);
  const auto p2 = p1 == std::string::npos ? p1 : find_ci(reply, believe, p1 + observe.size());
  const auto p3 = p2 == std::string::npos ? p2 : find_ci(reply, based, p2 + believe.size());
  if (p1 == std::string::npos || p2 == std::string::npos || p3 == std::string::npos) {
    throw TemplateParseError("reflection reply does not follow the observe/believe/action template");
  }
  ReflectionParts parts;
  parts.insight = strip_final_period(std::string(reply.substr(p1 + observe.size(), p2 - p1 - observe.size())));
  parts.thoughts = strip_final_period(std::string(reply.substr(p2 + believe.size(), p3 - p2 - believe.size())));
  parts.action = strip_final_period(std::string(reply.substr(p3 + based.size())));
  if (parts.insight.empty() || parts.thoughts.empty() || parts.action.empty()) {
    throw TemplateParseError("reflection reply has an empty observe/believe/action segment");
  }
  return parts;
}

std::string render_decision(const DecisionReply& d) {
  return "#### " + kProcess + ":\n" + d.process + "\n#### " + kFinal + ":\n" +
         std::string(game::decision_name(d.decision)) + "\n#### " + kPlan + ":\n" + d.plan;
}

DecisionReply parse_decision_reply(std::string_view reply) {
  const auto slots = structured::require_slots(reply, {kProcess, kFinal, kPlan}, "decision");
  DecisionReply out;
  out.process = slots.at(kProcess);
  out.plan = slots.at(kPlan);
  const std::string token = structured::bare_token(slots.at(kFinal));
  const auto d = game::parse_decision(token);
  if (!d) throw DecisionParseError("final decision '" + slots.at(kFinal) + "' is neither cooperate nor defect");
  out.decision = *d;
  return out;
}

}  // namespace arena::cognition
