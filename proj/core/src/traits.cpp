#include "arena/traits.hpp"

#include <cctype>

#include "arena/emotion.hpp"
#include "arena/text.hpp"

namespace arena {

std::string_view trait_name(TraitId trait) {
  switch (trait) {
    case TraitId::Openness: return "Openness";
    case TraitId::Conscientiousness: return "Conscientiousness";
    case TraitId::Extraversion: return "Extraversion";
    case TraitId::Agreeableness: return "Agreeableness";
    case TraitId::Neuroticism: return "Neuroticism";
  }
  return "?";
}

char trait_code(TraitId trait) { return trait_name(trait).front(); }

std::size_t trait_index(TraitId trait) { return static_cast<std::size_t>(trait); }

std::optional<TraitId> trait_from_code(char code) {
  for (auto t : kAllTraits) {
    if (trait_code(t) == static_cast<char>(std::toupper(static_cast<unsigned char>(code)))) {
      return t;
    }
  }
  return std::nullopt;
}

std::optional<TraitId> parse_trait(std::string_view text) {
  const std::string s = text::trim(text);
  if (s.size() == 1) return trait_from_code(s[0]);
  for (auto t : kAllTraits) {
    if (text::iequals(s, trait_name(t))) return t;
  }
  return std::nullopt;
}

std::string_view emotion_name(EmotionLabel label) {
  switch (label) {
    case EmotionLabel::Happy: return "Happy";
    case EmotionLabel::Sad: return "Sad";
    case EmotionLabel::Neutral: return "Neutral";
    case EmotionLabel::Angry: return "Angry";
    case EmotionLabel::Excited: return "Excited";
    case EmotionLabel::Frustrated: return "Frustrated";
  }
  return "?";
}

std::optional<EmotionLabel> parse_emotion(std::string_view text) {
  const std::string s = text::trim(text);
  for (auto e : kAllEmotions) {
    if (text::iequals(s, emotion_name(e))) return e;
  }
  return std::nullopt;
}

}  // namespace arena
