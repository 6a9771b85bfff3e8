#pragma once

#include <array>
#include <string>
#include <string_view>

namespace arena::assessment {

/// Direct Assessment reply: thought process plus an integer 1-5 rating and a
/// reason per trait, O, C, E, A, N order.
struct DirectReply {
  std::string thought_process;
  std::array<int, 5> ratings{};
  std::array<std::string, 5> reasons;
  friend bool operator==(const DirectReply&, const DirectReply&) = default;
};

/// Que-based Assessment reply for one item.
struct QueReply {
  std::string rating_process;
  std::string reason;
  char answer = 'C';
  friend bool operator==(const QueReply&, const QueReply&) = default;
};

std::string render_direct(const DirectReply& r);
/// TemplateParseError on a missing or non-numeric rating or empty reason;
/// RangeError for a rating outside 1..5 or a fractional rating.
DirectReply parse_direct_reply(std::string_view reply);

std::string render_que(const QueReply& r);
/// AnswerParseError when the Answer slot is not one of A-E.
QueReply parse_que_reply(std::string_view reply);

}  // namespace arena::assessment
