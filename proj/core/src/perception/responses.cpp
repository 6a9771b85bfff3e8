#include "arena/perception/responses.hpp"

#include "arena/errors.hpp"
#include "arena/structured.hpp"
#include "arena/text.hpp"

namespace arena::perception {

namespace {

const std::string kProcess = "Emotion Analysis Process";
const std::string kSentence = "Sentence";
const std::string kLabel = "Emotion Label";
const std::string kObserved = "Observed Behavior";
const std::string kInferred = "Inferred Personality Traits";
const std::string kReason = "Reason";

}  // namespace

std::string render_emotion(const EmotionReply& r) {
  return "- " + kProcess + ": " + r.analysis + "\n- " + kSentence + ": " + r.sentence + "\n- " + kLabel + ": " +
         std::string(emotion_name(r.label));
}

EmotionReply parse_emotion_reply(std::string_view reply) {
  auto slots = structured::extract_slots(reply, {kProcess, kSentence, kLabel});
  const auto label_it = slots.find(kLabel);
  if (label_it == slots.end() || label_it->second.empty()) throw LabelParseError("emotion reply has no Emotion Label slot");
  const auto label = parse_emotion(structured::bare_token(label_it->second));
  if (!label) throw LabelParseError("emotion label '" + label_it->second + "' is not one of the six labels");
  EmotionReply out;
  out.analysis = slots[kProcess];
  out.sentence = slots[kSentence];
  out.label = *label;
  return out;
}

std::string render_traits(const TraitsReply& r) {
  return "- " + kObserved + ": " + r.observed_behavior + "\n- " + kInferred + ": " + text::join(r.inferred_traits, ", ") +
         "\n- " + kReason + ": " + r.reason;
}

TraitsReply parse_traits_reply(std::string_view reply) {
  const auto slots = structured::require_slots(reply, {kObserved, kInferred, kReason}, "trait extraction");
  TraitsReply out;
  out.observed_behavior = slots.at(kObserved);
  out.reason = slots.at(kReason);
  for (const auto& part : text::split(slots.at(kInferred), ',')) {
    std::string t = text::trim(part);
    while (!t.empty() && (t.back() == '.' || t.back() == ';')) t.pop_back();
    if (!t.empty()) out.inferred_traits.push_back(t);
  }
  if (out.inferred_traits.empty()) throw TemplateParseError("trait extraction reply lists no inferred traits");
  return out;
}

}  // namespace arena::perception
