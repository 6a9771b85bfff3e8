#pragma once

#include <exception>
#include <string>
#include <utility>

#include "arena/errors.hpp"
#include "arena/gateway/gateway.hpp"

namespace arena::gateway {

struct RetryPolicy {
  /// Corrective re-asks after the first malformed reply.
  int max_reasks = 3;
};

inline std::string corrective_suffix(const std::string& problem) {
  return "Your previous response could not be used (" + problem +
         "). Respond again, strictly following the response template.";
}

/// Sends `req`, parses the reply, and on TemplateParseError or RangeError
/// re-asks with the bad reply and a corrective message appended. Rethrows the
/// last parse error once the policy is exhausted. Every attempt is recorded.
template <typename Parse>
auto complete_parsed(Gateway& gateway, ChatRequest req, RecordLog& log, Parse&& parse, RetryPolicy policy = {})
    -> decltype(parse(std::string{})) {
  std::exception_ptr last;
  for (int attempt = 0; attempt <= policy.max_reasks; ++attempt) {
    const std::string reply = gateway.complete(req, log);
    try {
      return parse(reply);
    } catch (const TemplateParseError& e) {
      last = std::current_exception();
      req.messages.push_back(Message{Role::Assistant, reply});
      req.messages.push_back(Message{Role::User, corrective_suffix(e.what())});
    } catch (const RangeError& e) {
      last = std::current_exception();
      req.messages.push_back(Message{Role::Assistant, reply});
      req.messages.push_back(Message{Role::User, corrective_suffix(e.what())});
    }
  }
  std::rethrow_exception(last);
}

}  // namespace arena::gateway
