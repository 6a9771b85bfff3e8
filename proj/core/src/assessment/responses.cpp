#include "arena/assessment/responses.hpp"

#include <cmath>
#include <optional>

#include "arena/errors.hpp"
#include "arena/structured.hpp"
#include "arena/text.hpp"
#include "arena/traits.hpp"

namespace arena::assessment {

namespace {

const std::string kThoughtHeader = "My step by step thought process";
const std::string kRatingHeader = "Player's Personality Traits Rating";
const std::string kRatingProcess = "Rating Process";
const std::string kReason = "Reason";
const std::string kAnswer = "Answer";

std::string_view strip_noise(std::string_view s) {
  while (!s.empty() && (s.front() == '#' || s.front() == '-' || s.front() == '*' || s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  return s;
}

bool is_header(std::string_view line, const std::string& header) {
  return text::starts_with_ci(strip_noise(line), header);
}

/// "Openness: 4, reason: ..." -> value part after the trait label, or nullopt.
std::optional<std::string> trait_line_value(std::string_view line, TraitId t) {
  std::string_view s = strip_noise(line);
  const auto name = trait_name(t);
  if (!text::starts_with_ci(s, name)) return std::nullopt;
  s.remove_prefix(name.size());
  while (!s.empty() && (s.front() == '*' || s.front() == ' ')) s.remove_prefix(1);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  return text::trim(s);
}

int parse_rating(const std::string& value, TraitId t) {
  std::size_t i = 0;
  while (i < value.size() && (value[i] == '*' || value[i] == ' ' || value[i] == '[' || value[i] == '{')) ++i;
  std::size_t j = i;
  if (j < value.size() && (value[j] == '-' || value[j] == '+')) ++j;
  while (j < value.size() && (std::isdigit(static_cast<unsigned char>(value[j])) || value[j] == '.')) ++j;
  std::string number = value.substr(i, j - i);
  while (!number.empty() && number.back() == '.') number.pop_back();
  const std::string trait(trait_name(t));
  if (number.empty() || number == "-" || number == "+") {
    throw TemplateParseError(trait + " rating is not a number");
  }
  double v = 0;
  try {
    v = std::stod(number);
  } catch (const std::exception&) {
    throw TemplateParseError(trait + " rating '" + number + "' is not a number");
  }
  if (v != std::floor(v)) throw RangeError(trait + " rating " + number + " is not an integer");
  if (v < 1 || v > 5) throw RangeError(trait + " rating " + number + " is outside 1..5");
  return static_cast<int>(v);
}

std::string parse_reason(const std::string& value, TraitId t) {
  const std::string lower = text::to_lower(value);
  const auto pos = lower.find("reason");
  if (pos == std::string::npos) throw TemplateParseError(std::string(trait_name(t)) + " rating has no reason");
  std::string_view rest(value);
  rest.remove_prefix(pos + 6);
  while (!rest.empty() && (rest.front() == '*' || rest.front() == ' ' || rest.front() == ':')) rest.remove_prefix(1);
  std::string reason = text::trim(rest);
  if (reason.empty()) throw TemplateParseError(std::string(trait_name(t)) + " reason is empty");
  return reason;
}

std::optional<char> option_letter(std::string_view value) {
  std::string s = text::trim(value);
  std::size_t i = 0;
  while (i < s.size() && (s[i] == '(' || s[i] == '[' || s[i] == '*' || s[i] == '"' || s[i] == '\'' || s[i] == ' ')) ++i;
  if (i < s.size()) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
    const bool alone = i + 1 >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i + 1]));
    if (c >= 'A' && c <= 'E' && alone) return c;
  }
  static const std::pair<const char*, char> kTexts[] = {{"neither accurate nor inaccurate", 'C'},
                                                        {"moderately inaccurate", 'D'},
                                                        {"very inaccurate", 'E'},
                                                        {"moderately accurate", 'B'},
                                                        {"very accurate", 'A'}};
  const std::string lower = text::to_lower(s);
  for (const auto& [phrase, letter] : kTexts) {
    if (lower.find(phrase) != std::string::npos) return letter;
  }
  return std::nullopt;
}

}  // namespace

std::string render_direct(const DirectReply& r) {
  std::string out = "### " + kThoughtHeader + ":\n" + r.thought_process + "\n### " + kRatingHeader + ":\n";
  for (auto t : kAllTraits) {
    const auto i = trait_index(t);
    out += "- " + std::string(trait_name(t)) + ": " + std::to_string(r.ratings[i]) + ", reason: " + r.reasons[i] + "\n";
  }
  return out;
}

DirectReply parse_direct_reply(std::string_view reply) {
  const auto lines = text::split_lines(reply);
  std::size_t rating_start = 0;
  std::optional<std::size_t> header;
  std::optional<std::size_t> thought;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!thought && is_header(lines[i], kThoughtHeader)) thought = i;
    if (is_header(lines[i], kRatingHeader)) header = i;
  }
  if (header) rating_start = *header + 1;

  DirectReply out;
  std::vector<std::string> missing;
  for (auto t : kAllTraits) {
    std::optional<std::string> value;
    for (std::size_t i = rating_start; i < lines.size(); ++i) {
      if (auto v = trait_line_value(lines[i], t)) value = std::move(v);
    }
    if (!value) {
      missing.emplace_back(trait_name(t));
      continue;
    }
    out.ratings[trait_index(t)] = parse_rating(*value, t);
    out.reasons[trait_index(t)] = parse_reason(*value, t);
  }
  if (!missing.empty()) throw TemplateParseError("direct assessment reply has no rating for: " + text::join(missing, ", "));

  if (thought) {
    const std::size_t end = header && *header > *thought ? *header : lines.size();
    std::string first = lines[*thought];
    const auto colon = first.find(':');
    std::vector<std::string> parts;
    if (colon != std::string::npos) parts.push_back(first.substr(colon + 1));
    for (std::size_t i = *thought + 1; i < end; ++i) parts.push_back(lines[i]);
    out.thought_process = text::trim(text::join(parts, "\n"));
  }
  return out;
}

std::string render_que(const QueReply& r) {
  return "- " + kRatingProcess + ": " + r.rating_process + "\n- " + kReason + ": " + r.reason + "\n- " + kAnswer + ": " +
         std::string(1, r.answer);
}

QueReply parse_que_reply(std::string_view reply) {
  auto slots = structured::extract_slots(reply, {kRatingProcess, kReason, kAnswer});
  const auto it = slots.find(kAnswer);
  if (it == slots.end() || it->second.empty()) throw AnswerParseError("questionnaire reply has no Answer slot");
  const auto letter = option_letter(it->second);
  if (!letter) throw AnswerParseError("answer '" + it->second + "' is not one of A-E");
  QueReply out;
  out.rating_process = slots[kRatingProcess];
  out.reason = slots[kReason];
  out.answer = *letter;
  return out;
}

}  // namespace arena::assessment
