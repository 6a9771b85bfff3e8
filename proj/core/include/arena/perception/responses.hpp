#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "arena/emotion.hpp"

namespace arena::perception {

struct EmotionReply {
  std::string analysis;
  std::string sentence;
  EmotionLabel label = EmotionLabel::Neutral;
  friend bool operator==(const EmotionReply&, const EmotionReply&) = default;
};

struct TraitsReply {
  std::string observed_behavior;
  std::vector<std::string> inferred_traits;
  std::string reason;
  friend bool operator==(const TraitsReply&, const TraitsReply&) = default;
};

std::string render_emotion(const EmotionReply& r);
/// LabelParseError when the label is outside the six-label set.
EmotionReply parse_emotion_reply(std::string_view reply);

std::string render_traits(const TraitsReply& r);
/// Inferred traits are comma-separated; TemplateParseError on a missing slot.
TraitsReply parse_traits_reply(std::string_view reply);

}  // namespace arena::perception
