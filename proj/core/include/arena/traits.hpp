#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace arena {

enum class TraitId { Openness, Conscientiousness, Extraversion, Agreeableness, Neuroticism };

/// Canonical O, C, E, A, N order used by reports and score vectors.
inline constexpr std::array<TraitId, 5> kAllTraits = {
    TraitId::Openness, TraitId::Conscientiousness, TraitId::Extraversion,
    TraitId::Agreeableness, TraitId::Neuroticism};

std::string_view trait_name(TraitId trait);
char trait_code(TraitId trait);
std::size_t trait_index(TraitId trait);

std::optional<TraitId> trait_from_code(char code);
/// Accepts a one-letter code or a full name, case-insensitive.
std::optional<TraitId> parse_trait(std::string_view text);

}  // namespace arena
