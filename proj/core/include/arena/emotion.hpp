#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace arena {

enum class EmotionLabel { Happy, Sad, Neutral, Angry, Excited, Frustrated };

inline constexpr std::array<EmotionLabel, 6> kAllEmotions = {
    EmotionLabel::Happy, EmotionLabel::Sad, EmotionLabel::Neutral,
    EmotionLabel::Angry, EmotionLabel::Excited, EmotionLabel::Frustrated};

std::string_view emotion_name(EmotionLabel label);
/// Exact label match, case-insensitive. Anything outside the six labels is nullopt.
std::optional<EmotionLabel> parse_emotion(std::string_view text);

}  // namespace arena
