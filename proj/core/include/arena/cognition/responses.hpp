#pragma once

#include <string>
#include <string_view>

#include "arena/game/types.hpp"

namespace arena::cognition {

/// Round summary requested by the memory prompt.
struct MemorySummary {
  std::string decision_analysis;
  std::string dialogue_context;
  std::string fact_based_reasoning;
  friend bool operator==(const MemorySummary&, const MemorySummary&) = default;
};

/// "As an agent, I observe that ... I believe that ... Based on what I have
/// observed and reflected upon, I ..."
struct ReflectionParts {
  std::string insight;
  std::string thoughts;
  std::string action;
  friend bool operator==(const ReflectionParts&, const ReflectionParts&) = default;
};

struct DecisionReply {
  std::string process;
  game::Decision decision = game::Decision::Cooperate;
  std::string plan;
  friend bool operator==(const DecisionReply&, const DecisionReply&) = default;
};

std::string render_memory(const MemorySummary& m);
MemorySummary parse_memory(std::string_view reply);

std::string render_reflection(const ReflectionParts& r);
ReflectionParts parse_reflection(std::string_view reply);

std::string render_decision(const DecisionReply& d);
/// Throws DecisionParseError when the Final Decision slot is not one of the
/// two legal words (case and punctuation are ignored).
DecisionReply parse_decision_reply(std::string_view reply);

}  // namespace arena::cognition
