#include "arena/platform/scripted.hpp"

#include <array>

#include "arena/assessment/responses.hpp"
#include "arena/cognition/responses.hpp"
#include "arena/perception/responses.hpp"
#include "arena/text.hpp"

namespace arena::platform {

using gateway::Purpose;

namespace {

/// Deterministic pseudo-random stream seeded from the request hash.
class Dice {
public:
  explicit Dice(const gateway::ChatRequest& req) : state_(std::stoull(gateway::request_hash(req).substr(0, 16), nullptr, 16)) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool chance(int percent) { return static_cast<int>(next() % 100) < percent; }

private:
  std::uint64_t state_;
};

std::string all_text(const gateway::ChatRequest& req) {
  std::string s;
  for (const auto& m : req.messages) s += m.content + "\n";
  return s;
}

bool has(const std::string& haystack, std::string_view needle) { return haystack.find(needle) != std::string::npos; }

/// Text that follows a "#### Heading:" line up to the next heading.
std::string section_after(const std::string& s, const std::string& heading) {
  const auto pos = s.find(heading);
  if (pos == std::string::npos) return {};
  const auto start = s.find('\n', pos);
  if (start == std::string::npos) return {};
  const auto end = s.find("\n#", start + 1);
  return text::trim(s.substr(start + 1, end == std::string::npos ? std::string::npos : end - start - 1));
}

int count_prefixed_lines(const std::string& block, std::string_view prefix) {
  int n = 0;
  for (const auto& line : text::split_lines(block)) {
    if (text::trim(line).rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

int cooperation_percent(const std::string& persona_text) {
  if (has(persona_text, "altruism")) return 85;
  if (has(persona_text, "emotional instability")) return 40;
  if (has(persona_text, "extremely low in")) return 35;
  return 60;
}

const std::array<const char*, 8> kAgentLines = {
    "I think we both do better if we trust each other this round.",
    "What are you planning to do? I would like to cooperate.",
    "Honestly, I am still deciding. Convince me you will cooperate.",
    "Last round taught me something. Let's keep this fair.",
    "I am willing to work with you if you are straight with me.",
    "Let's split the gain. Cooperation works for both of us.",
    "Tell me why I should trust you this time.",
    "I have a good feeling about this round. Are you in?"};

const std::array<const char*, 8> kPlayerLines = {
    "Hi there! I am going to cooperate, I promise.",
    "I am not sure yet. What will you do?",
    "Let's both cooperate and share the reward.",
    "I had a rough round before, so I am a bit cautious.",
    "Trust me, I always keep my word.",
    "Why should I believe you this time?",
    "Sounds good to me. Let's do it together!",
    "Hmm, I need a moment to think about this."};

const std::array<const char*, 4> kTraitWords = {"cautious, reflective", "friendly, talkative", "trusting, cooperative",
                                                "anxious, hesitant"};

std::string decision_reply(Dice& d, const std::string& system) {
  cognition::DecisionReply r;
  r.decision = d.chance(cooperation_percent(system)) ? game::Decision::Cooperate : game::Decision::Defect;
  r.process = "Weighing the dialogue against earlier rounds, I judge how likely the player is to keep their word.";
  r.plan = d.chance(50) ? "Keep building trust but watch for betrayal." : "Stay cautious and reward consistent cooperation.";
  return cognition::render_decision(r);
}

std::string sim_player_reply(Dice& d, const gateway::ChatRequest& req) {
  const std::string& system = req.messages.front().content;
  const int coop = cooperation_percent(system);
  if (has(system, "Final Decision")) {
    const bool c = d.chance(coop);
    return std::string("- Thought: I go with my gut about this opponent.\n- Final Decision: ") +
           (c ? "cooperate" : "defect");
  }
  const std::string dialogue = section_after(system, "### Current Round Dialogue:");
  const int mine = count_prefixed_lines(dialogue, "You:");
  const bool talkative = has(system, "talkativeness");
  const int end_after = talkative ? 2 : 1;
  if (mine >= end_after && (mine >= 2 || d.chance(50))) return "- Action: end\n- Message: -";
  return std::string("- Action: say\n- Message: ") + kPlayerLines[d.pick(kPlayerLines.size())];
}

}  // namespace

std::string scripted_reply(const gateway::ChatRequest& req) {
  Dice d(req);
  const std::string all = all_text(req);
  switch (req.purpose) {
    case Purpose::AgentChat:
      return kAgentLines[d.pick(kAgentLines.size())];
    case Purpose::Memory: {
      cognition::MemorySummary m;
      m.decision_analysis = "The player's choice matched what they said during the dialogue.";
      m.dialogue_context = "We discussed whether to trust each other this round.";
      m.fact_based_reasoning = d.chance(50) ? "Their words and actions were consistent." : "Their words and actions diverged.";
      return cognition::render_memory(m);
    }
    case Purpose::Reflection: {
      cognition::ReflectionParts r;
      r.insight = "The player responds to reassurance.";
      r.thoughts = d.chance(50) ? "Trust seems to be growing." : "I should stay alert.";
      r.action = "Keep the conversation open and honest.";
      return cognition::render_reflection(r);
    }
    case Purpose::Decide:
      return decision_reply(d, req.messages.front().content);
    case Purpose::Emotion: {
      perception::EmotionReply e;
      e.analysis = "The tone of the sentence suggests the player's current mood.";
      e.sentence = section_after(all, "#### Sentence to Analyze:");
      if (e.sentence.empty()) e.sentence = "-";
      e.label = kAllEmotions[d.pick(kAllEmotions.size())];
      return perception::render_emotion(e);
    }
    case Purpose::Traits: {
      perception::TraitsReply t;
      t.observed_behavior = "The player's words and final move in this round.";
      t.inferred_traits = text::split(kTraitWords[d.pick(kTraitWords.size())], ',');
      for (auto& s : t.inferred_traits) s = text::trim(s);
      t.reason = "Inferred from how the dialogue related to the decision.";
      return perception::render_traits(t);
    }
    case Purpose::DirectAssess: {
      assessment::DirectReply r;
      r.thought_process = "I reviewed each encounter's dialogue and decisions in turn.";
      for (std::size_t i = 0; i < 5; ++i) {
        r.ratings[i] = 1 + static_cast<int>(d.pick(5));
        r.reasons[i] = "Consistent with the player's behavior across rounds.";
      }
      return assessment::render_direct(r);
    }
    case Purpose::QueAssess: {
      assessment::QueReply q;
      q.rating_process = "I compared the statement with the player's dialogue and moves.";
      q.reason = "The evidence points this way.";
      q.answer = static_cast<char>('A' + d.pick(5));
      return assessment::render_que(q);
    }
    case Purpose::SimulatedPlayer:
      return sim_player_reply(d, req);
  }
  return {};
}

}  // namespace arena::platform
